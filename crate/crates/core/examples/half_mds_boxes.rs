// N-sum boxes: validity, the half-MDS property and the block GRS construction.

use sigma_qmac::field::{field_construct, field_of_order};
use sigma_qmac::matrix::FMat;
use sigma_qmac::nsumbox::{build_half_mds_box, half_mds_failures, is_half_mds, is_valid_box, symplectic_gram};

pub fn run_example() -> sigma_qmac::Result<()> {
    let f2 = field_construct(2, 1)?;
    let m1 = FMat::from_ints(&f2, &[[1, 1, 0, 0], [0, 0, 1, 1]])?;
    let m2 = FMat::from_ints(&f2, &[[1, 0, 1, 0], [0, 1, 0, 0]])?;
    for (name, m) in [("M1", &m1), ("M2", &m2)] {
        println!("{name}: valid {}, half-MDS {:?}", is_valid_box(m)?, is_half_mds(m)?);
    }
    assert!(is_half_mds(&m1)?.holds());
    println!("M2 loses rank on {:?}", half_mds_failures(&m2)?);

    for (n, q) in [(5, 5), (7, 8)] {
        let f = field_of_order(q)?;
        let b = build_half_mds_box(n, &f)?;
        assert!(symplectic_gram(b.matrix())?.is_zero());
        assert_eq!(b.matrix().rank(), n);
        assert!(is_half_mds(b.matrix())?.holds());
        println!("N={n} over {f}: rank {n}, self-orthogonal, half-MDS");
    }
    print!("{}", build_half_mds_box(3, &field_construct(3, 1)?)?.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
