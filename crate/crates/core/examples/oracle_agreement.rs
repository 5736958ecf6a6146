// Brute-force oracles: vertex enumeration against the simplex, and exhaustive
// decoding against mutated schemes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigma_qmac::field::field_construct;
use sigma_qmac::instances::fig1_problem;
use sigma_qmac::oracle::{
    exhaustive_decode_check, fullent_vertex_enum, lp_agreement, lp_vertex_enum, mutate_scheme, RandomBounds,
};
use sigma_qmac::scheme::fig2_reference_scheme;

pub fn run_example() -> sigma_qmac::Result<()> {
    let p = fig1_problem();
    println!(
        "optimal cost by vertex enumeration: {} (per-server form {})",
        lp_vertex_enum(&p)?,
        fullent_vertex_enum(&p)?
    );

    let reports = lp_agreement(40, 3, RandomBounds { max_s: 3, max_k: 2, max_t: 2 })?;
    let agree = reports.iter().filter(|r| r.agree).count();
    println!("simplex and vertex enumeration agree on {agree}/{} random maps", reports.len());
    assert_eq!(agree, reports.len());

    let sch = fig2_reference_scheme(&field_construct(2, 1)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut broken, mut caught) = (0, 0);
    for _ in 0..12 {
        let (mutant, site, still_valid) = mutate_scheme(&sch, &mut rng)?;
        let r = exhaustive_decode_check(&mutant)?;
        if !still_valid {
            broken += 1;
            caught += usize::from(!r.agree);
        }
        println!("mutated {site:?}: certificate {}, decode {}", if still_valid { "holds" } else { "broken" }, r.agree);
        assert_eq!(r.agree, still_valid);
    }
    println!("{caught}/{broken} certificate-breaking mutants caught");
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
