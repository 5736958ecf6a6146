// The hand-built 5-sum-box scheme for the four-server map: four sums per five
// qudits, checked on every binary data realization.

use sigma_qmac::field::field_construct;
use sigma_qmac::oracle::exhaustive_decode_check;
use sigma_qmac::rational::Rat;
use sigma_qmac::scheme::{fig2_determinants, fig2_reference_scheme};

pub fn run_example() -> sigma_qmac::Result<()> {
    // Streams A, B, C, D use columns (1,6,2,7), (1,6,3,8), (2,7,3,8), (4,5,9,10).
    let f3 = field_construct(3, 1)?;
    let signed: Vec<i64> =
        fig2_determinants(&f3)?.iter().map(|d| if d.value() == 2 { -1 } else { d.value() as i64 }).collect();
    println!("det(V_dec M_cols) per stream over F3: {signed:?}");
    assert_eq!(signed, [1, -1, 1, -1]);
    let (a, b, c, d) = (signed[0], signed[1], signed[2], signed[3]);
    assert_eq!([a, c, b, d], [1, 1, -1, -1]);

    let f2 = field_construct(2, 1)?;
    let sch = fig2_reference_scheme(&f2)?;
    sch.check()?;
    assert_eq!(sch.rate(), Rat::new(4, 5));
    let report = exhaustive_decode_check(&sch)?;
    println!("rate {}; {} of {} realizations decode to A+B+C+D", sch.rate(), report.main, report.oracle);
    assert!(report.agree);

    let data = [vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]];
    let out = sch.simulate(&data)?;
    println!("one use: {data:?} -> {out:?}");
    assert_eq!(out, vec![1, 0, 0, 1]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
