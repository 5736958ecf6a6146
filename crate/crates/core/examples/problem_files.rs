// The problem-file format and the map transformations used by the identities.

use sigma_qmac::model::{merged_map, parse_problem, triangle_substitute};

const FIG1: &str = "\
# four servers, three of them holding two streams each
field 2
servers 4
stream a: 1 2
stream b: 1 3
stream c: 2 3
stream d: 4
clique: 1 2
clique: 2 3 4
";

pub fn run_example() -> sigma_qmac::Result<()> {
    let p = parse_problem(FIG1)?;
    println!("{p}");
    assert_eq!((p.s(), p.k(), p.t(), p.gamma()), (4, 4, 2, 5));

    let full = parse_problem(&FIG1.replace("clique: 1 2\nclique: 2 3 4\n", "entangle beta 3\n"))?;
    println!("entangle beta 3 gives {} cliques: {:?}", full.t(), full.cliques());
    assert_eq!(full.t(), 4);

    let split = triangle_substitute(&full, 1)?;
    println!("replacing the first 3-clique by its pairs: {:?}", split.cliques());
    assert_eq!(split.gamma(), full.gamma() + 3);

    let merged = merged_map(&p)?;
    println!("pair-server map has {} servers; stream d is seen by {:?}", merged.s(), merged.streams()[3]);

    assert!(parse_problem("field 2\nservers 1\nstream a: 1\nclique:\n").is_err());
    print!("rendered back:\n{}", p.render());
    assert_eq!(parse_problem(&p.render())?, p);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
