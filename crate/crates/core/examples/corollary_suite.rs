// Capacity identities on seeded random maps and on the named witnesses.

use sigma_qmac::oracle::{check_corollaries, named_corollary_checks, render_tap, CorollaryBounds};

pub fn run_example() -> sigma_qmac::Result<()> {
    for r in named_corollary_checks()? {
        println!("{:<70} {} vs {}", r.instance, r.main, r.oracle);
        assert!(r.agree);
    }
    let bounds = CorollaryBounds {
        triangle_cases: 20,
        pair_cases: 20,
        gain_cases: 40,
        separability_cases: 20,
        ..Default::default()
    };
    let reports = check_corollaries(2024, bounds)?;
    let failed = reports.iter().filter(|r| !r.agree).count();
    println!("{} identity checks, {failed} failed", reports.len());
    assert_eq!(failed, 0, "{}", render_tap(&reports));
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
