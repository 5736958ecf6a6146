// Prime and extension fields, and the coordinate view of an extension.
//
// ```bash
// cargo run --example field_arithmetic
// ```

use sigma_qmac::field::{extend_field, ff_add, ff_inv, ff_mul, field_construct};

pub fn run_example() -> sigma_qmac::Result<()> {
    let f5 = field_construct(5, 1)?;
    let (a, b) = (f5.element(3)?, f5.element(4)?);
    let sum = ff_add(&a, &b)?;
    let prod = ff_mul(&a, &b)?;
    println!("in {f5}: 3 + 4 = {sum}, 3 * 4 = {prod}, 1/3 = {}", ff_inv(&a)?);
    assert_eq!((sum.value(), prod.value()), (2, 2));

    let f8 = field_construct(2, 3)?;
    println!("{f8} has modulus coefficients {:?} and generator {}", f8.modulus(), f8.render(f8.primitive_element()));
    let g = f8.primitive_element();
    assert_eq!(f8.pow(g, 7), 1);

    // F_4 sits inside F_64 as the z = 3 extension; every big element splits
    // into three F_4 coordinates and composes back.
    let f4 = field_construct(2, 2)?;
    let ext = extend_field(&f4, 3)?;
    let x = ext.big().pow(ext.big().primitive_element(), 10);
    let coords = ext.expand_raw(x);
    println!("{} in {} has {} coordinates {:?}", ext.big().render(x), ext.big(), f4, coords);
    assert_eq!(ext.compose_raw(&coords), x);
    for a in 0..f4.order() {
        for b in 0..f4.order() {
            let lhs = ext.embed_raw(f4.mul(a, b));
            assert_eq!(lhs, ext.big().mul(ext.embed_raw(a), ext.embed_raw(b)));
        }
    }
    println!("the embedding of {f4} respects multiplication");
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
