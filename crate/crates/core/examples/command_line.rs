// Driving the `sqmac` command line in-process.

use sigma_qmac::cli::{run, EXIT_OK};

pub fn run_example() -> sigma_qmac::Result<()> {
    let dir = std::env::temp_dir().join(format!("sqmac-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| sigma_qmac::Error::InvalidArgument(e.to_string()))?;
    let prob = dir.join("fig1.prob");
    std::fs::write(
        &prob,
        "field 2\nservers 4\nstream a: 1 2\nstream b: 1 3\nstream c: 2 3\nstream d: 4\nentangle beta 2\n",
    )
    .map_err(|e| sigma_qmac::Error::InvalidArgument(e.to_string()))?;
    let prob = prob.to_str().expect("utf-8 path");

    let invoke = |args: &[&str]| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("sqmac").chain(args.iter().copied()), &mut out, &mut err);
        print!("$ sqmac {}\n{}{}", args.join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        code
    };
    assert_eq!(invoke(&["capacity", prob, "--dsc"]), EXIT_OK);
    assert_eq!(invoke(&["capacity", prob, "--format", "records"]), EXIT_OK);
    let scheme = dir.join("fig1.scheme");
    let scheme = scheme.to_str().expect("utf-8 path");
    assert_eq!(invoke(&["scheme", "build", prob, "--out", scheme]), EXIT_OK);
    assert_eq!(invoke(&["scheme", "check", scheme]), EXIT_OK);
    assert_eq!(invoke(&["scheme", "simulate", scheme, "--trials", "1000"]), EXIT_OK);
    assert_eq!(invoke(&["verify", "beta-star", "--max-s", "4"]), EXIT_OK);
    Ok(())
}

#[allow(dead_code)]
fn main() -> sigma_qmac::Result<()> {
    run_example()
}
