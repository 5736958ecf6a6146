// Two-party entanglement only: six sums per eight qudits through 2-sum boxes.

use sigma_qmac::capacity::capacity_lp;
use sigma_qmac::field::field_construct;
use sigma_qmac::instances::table1;
use sigma_qmac::oracle::exhaustive_decode_check;
use sigma_qmac::rational::Rat;
use sigma_qmac::scheme::two_sum_reference_scheme;

pub fn run_example() -> sigma_qmac::Result<()> {
    let f2 = field_construct(2, 1)?;
    let sch = two_sum_reference_scheme(&f2)?;
    sch.check()?;
    println!("cliques {:?}, {} sums per {} qudits", sch.problem().cliques(), sch.rank(), sch.allocation().total());
    assert_eq!(sch.rate(), Rat::new(3, 4));

    let row = table1().into_iter().find(|g| g.cliques == sch.problem().cliques()).expect("listed map");
    assert_eq!(capacity_lp(&row.problem())?.capacity, sch.rate());
    println!("matches the capacity of {}", row.label());

    let report = exhaustive_decode_check(&sch)?;
    println!("{}: {} of {}", report.instance, report.main, report.oracle);
    assert!(report.agree);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
