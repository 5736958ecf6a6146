// Symmetric instances: closed form, LP cross-check and the smallest clique
// size that already reaches full-entanglement capacity.

use sigma_qmac::capacity::{beta_star, capacity_lp, capacity_symmetric};
use sigma_qmac::instances::table2_golden;
use sigma_qmac::model::{symmetric_problem, SymmetricParams};

pub fn run_example() -> sigma_qmac::Result<()> {
    let golden = table2_golden();
    println!("S = 8, rows alpha, columns beta");
    for a in 1..=8 {
        let row: Vec<String> = (1..=8)
            .map(|b| {
                let c = capacity_symmetric(SymmetricParams { s: 8, alpha: a, beta: b });
                assert_eq!(c, golden[a - 1][b - 1]);
                format!("{:>6}", c.to_string())
            })
            .collect();
        println!("{}", row.join(" "));
    }

    let sp = SymmetricParams::new(5, 2, 3)?;
    let lp = capacity_lp(&symmetric_problem(sp)?)?.capacity;
    println!("S=5, alpha=2, beta=3: LP {lp}, closed form {}", capacity_symmetric(sp));
    assert_eq!(lp, capacity_symmetric(sp));

    for s in [6, 9] {
        let bs: Vec<usize> = (1..=s).map(|a| beta_star(s, a)).collect::<Result<_, _>>()?;
        println!("beta* for S={s}: {bs:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
