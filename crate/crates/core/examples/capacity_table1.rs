// Exact capacities of the four-server map under every listed entanglement map.

use sigma_qmac::capacity::{capacity_lp, dsc_gain, feasible};
use sigma_qmac::instances::{fig1_problem, table1};
use sigma_qmac::rational::Rat;

pub fn run_example() -> sigma_qmac::Result<()> {
    for row in table1() {
        let c = capacity_lp(&row.problem())?;
        println!("{:<44} C = {:<4} witness {:?}", row.label(), c.capacity.to_string(), c.witness);
        assert_eq!(c.capacity, row.capacity);
    }

    let p = fig1_problem();
    let c = capacity_lp(&p)?;
    assert!(feasible(&p, &c.witness)?);
    let quarter = Rat::new(1, 4);
    assert!(feasible(&p, &[quarter.clone(), quarter.clone(), quarter.clone(), Rat::new(1, 2)])?);
    assert!(!feasible(&p, &[quarter.clone(), quarter.clone(), quarter, Rat::new(1, 4)])?);
    println!("full entanglement doubles the unentangled rate: gain {}", dsc_gain(&p)?);
    assert_eq!(dsc_gain(&p)?, Rat::from_int(2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
