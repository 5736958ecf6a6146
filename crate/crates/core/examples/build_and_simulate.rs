// From a problem file to a certified capacity-achieving scheme, its text
// form, and a batch of simulated channel uses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigma_qmac::capacity::capacity_lp;
use sigma_qmac::model::parse_problem;
use sigma_qmac::scheme::{build_scheme, AllocSpec, Allocation, CodingScheme, SchemeOptions};

const PROBLEM: &str = "field 2
servers 4
stream a: 1 2
stream b: 1 3
stream c: 2 3
stream d: 4
clique: 1 2
clique: 2 3 4
";

pub fn run_example() -> sigma_qmac::Result<()> {
    let p = parse_problem(PROBLEM)?;
    let cap = capacity_lp(&p)?.capacity;
    let sch = build_scheme(&p, &SchemeOptions::default())?;
    println!(
        "capacity {cap}; scheme over {} with allocation {:?}: rank {}, rate {}",
        sch.field(),
        sch.allocation().per_server(),
        sch.rank(),
        sch.rate()
    );
    assert_eq!(sch.rate(), cap);

    let text = sch.to_text();
    let back = CodingScheme::from_text(&text)?;
    back.check()?;
    assert_eq!(back.to_text(), text);
    println!("scheme file: {} lines, round trip exact", text.lines().count());

    let q = sch.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let data: Vec<Vec<u32>> = (0..p.k()).map(|_| (0..sch.rank()).map(|_| rng.gen_range(0..q)).collect()).collect();
        let want: Vec<u32> =
            (0..sch.rank()).map(|i| data.iter().fold(0, |acc, d| sch.field().add(acc, d[i]))).collect();
        assert_eq!(sch.simulate(&data)?, want);
    }
    println!("100 random channel uses decode the sum");

    // A hand-picked allocation below capacity still yields a certified scheme.
    let a = Allocation::new(&p, vec![vec![1, 1], vec![1, 1, 1]])?;
    let low = build_scheme(&p, &SchemeOptions { alloc: AllocSpec::Given(a), ..Default::default() })?;
    println!("allocation (1,1 | 1,1,1): rate {}", low.rate());
    assert!(low.rate() <= cap);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
