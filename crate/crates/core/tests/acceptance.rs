//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero on any failure.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigma_qmac::capacity::{beta_star_formula, beta_star_scan, capacity_lp, symmetric_forms};
use sigma_qmac::error::Error;
use sigma_qmac::field::{field_construct, field_of_order, FieldSpec};
use sigma_qmac::instances::{table1, table2_golden};
use sigma_qmac::matrix::FMat;
use sigma_qmac::model::{symmetric_problem, Problem, SymmetricParams};
use sigma_qmac::nsumbox::{build_half_mds_box, is_half_mds, symplectic_gram, HalfMds};
use sigma_qmac::oracle::{
    check_corollaries, exhaustive_decode_check, lp_agreement, mutate_scheme, random_decode_check, CorollaryBounds,
    OracleReport, RandomBounds,
};
use sigma_qmac::rational::Rat;
use sigma_qmac::scheme::{
    build_scheme, fig2_determinants, fig2_reference_scheme, two_sum_reference_scheme, CodingScheme, SchemeOptions,
    ZSpec,
};

const TABLE1_LIMIT: Duration = Duration::from_secs(5);
const TABLE2_LIMIT: Duration = Duration::from_secs(5);
const LP_CLOSED_FORM_LIMIT: Duration = Duration::from_secs(300);
const FIG2_LIMIT: Duration = Duration::from_secs(10);
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(120);

const SIMULATION_TRIALS: u64 = 10_000;
const ORACLE_LP_CASES: usize = 200;
const ORACLE_SEED: u64 = 7;
const COROLLARY_SEED: u64 = 7;
const MUTATIONS_PER_SCHEME: usize = 24;

type Verdict = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Verdict>);

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    let t = format!("{:.2} s, limit {} s", took.as_secs_f64(), limit.as_secs());
    match v {
        Ok(m) if took <= limit => Ok(format!("{m}; {t}")),
        Ok(m) => Err(format!("{m}; too slow: {t}")),
        Err(m) => Err(format!("{m}; {t}")),
    }
}

fn lib<T>(r: sigma_qmac::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn failed(reports: &[OracleReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.agree).map(|r| format!("{}: {} vs {}", r.instance, r.main, r.oracle)).collect()
}

fn table1_reproduction() -> Verdict {
    let expected = ["4/5", "3/4", "3/4", "2/3", "2/3", "2/3", "2/3", "1/2", "1/2", "1/2", "2/5"];
    let mut bad = Vec::new();
    for (row, want) in table1().iter().zip(expected) {
        let c = lib(capacity_lp(&row.problem()))?.capacity;
        if c.to_string() != want || c != row.capacity {
            bad.push(format!("{}: {c} vs {want}", row.label()));
        }
    }
    if bad.is_empty() {
        Ok("11/11 capacities exact".into())
    } else {
        Err(bad.join("; "))
    }
}

fn table2_reproduction() -> Verdict {
    let golden = table2_golden();
    let mut bad = Vec::new();
    for a in 1..=8 {
        for b in 1..=8 {
            let [f1, ..] = symmetric_forms(SymmetricParams { s: 8, alpha: a, beta: b });
            if f1 != golden[a - 1][b - 1] {
                bad.push(format!("alpha={a} beta={b}: {f1}"));
            }
        }
    }
    let mut forms = 0;
    for s in 1..=10 {
        for a in 1..=s {
            for b in 1..=s {
                let [f1, f2, f3] = symmetric_forms(SymmetricParams { s, alpha: a, beta: b });
                forms += 1;
                if f1 != f2 || f2 != f3 {
                    bad.push(format!("S={s} alpha={a} beta={b}: forms {f1}, {f2}, {f3}"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("64/64 cells exact, three forms agree on {forms} instances"))
    } else {
        Err(bad.join("; "))
    }
}

fn lp_closed_form() -> Verdict {
    let mut n = 0;
    let mut bad = Vec::new();
    for s in 1..=6 {
        for a in 1..=s {
            for b in 1..=s {
                let sp = lib(SymmetricParams::new(s, a, b))?;
                let lp = lib(capacity_lp(&lib(symmetric_problem(sp))?))?.capacity;
                let [closed, ..] = symmetric_forms(sp);
                n += 1;
                if lp != closed {
                    bad.push(format!("S={s} alpha={a} beta={b}: LP {lp}, closed {closed}"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{n}/{n} symmetric instances with S <= 6 agree"))
    } else {
        Err(bad.join("; "))
    }
}

fn fig2_example() -> Verdict {
    let f2 = lib(field_construct(2, 1))?;
    let sch = lib(fig2_reference_scheme(&f2))?;
    lib(sch.check())?;
    let report = lib(exhaustive_decode_check(&sch))?;
    if !report.agree || report.oracle != "65536" {
        return Err(format!("exhaustive decode {} of {}", report.main, report.oracle));
    }
    // The determinants are integers in {1, -1}; F3 separates the two signs.
    let f3 = lib(field_construct(3, 1))?;
    let signed: Vec<i64> =
        lib(fig2_determinants(&f3))?.iter().map(|d| if d.value() == 2 { -1 } else { d.value() as i64 }).collect();
    // Listed order: columns (1,6,2,7), (2,7,3,8), (1,6,3,8), (4,5,9,10).
    let listed = [signed[0], signed[2], signed[1], signed[3]];
    if listed != [1, 1, -1, -1] {
        return Err(format!("determinants {listed:?}"));
    }
    if sch.rate() != Rat::new(4, 5) {
        return Err(format!("rate {}", sch.rate()));
    }
    Ok(format!("65536/65536 realizations decode, determinants {listed:?}, rate 4/5"))
}

fn simulate_all(sch: &CodingScheme, seed: u64) -> Result<String, String> {
    let r = lib(random_decode_check(sch, SIMULATION_TRIALS, seed))?;
    if !r.agree {
        return Err(format!("{}: {} of {}", r.instance, r.main, r.oracle));
    }
    match exhaustive_decode_check(sch) {
        Ok(e) if e.agree => Ok("exhaustive".into()),
        Ok(e) => Err(format!("{}: {} of {}", e.instance, e.main, e.oracle)),
        Err(Error::Guard { .. }) => Ok("random".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn construction() -> Verdict {
    let mut problems: Vec<Problem> = table1().iter().map(|g| g.problem()).collect();
    for s in 1..=5 {
        for a in 1..=s {
            for b in 1..=s {
                problems.push(lib(symmetric_problem(SymmetricParams { s, alpha: a, beta: b }))?);
            }
        }
    }
    let mut exhaustive = 0;
    for (i, p) in problems.iter().enumerate() {
        let sch = lib(build_scheme(p, &SchemeOptions::default()))?;
        lib(sch.check())?;
        let cap = lib(capacity_lp(p))?.capacity;
        if sch.rate() != cap {
            return Err(format!("{p}: rate {} vs capacity {cap}", sch.rate()));
        }
        if simulate_all(&sch, i as u64)? == "exhaustive" {
            exhaustive += 1;
        }
    }
    Ok(format!(
        "{} schemes certified at capacity, {SIMULATION_TRIALS} random decodes each, {exhaustive} also exhaustive",
        problems.len()
    ))
}

fn corollaries() -> Verdict {
    let b = CorollaryBounds::default();
    let reports = lib(check_corollaries(COROLLARY_SEED, b))?;
    let count = |prefix: &str| reports.iter().filter(|r| r.instance.starts_with(prefix)).count();
    let counts = [
        ("triangle-substitution", b.triangle_cases),
        ("pair-merge", b.pair_cases),
        ("disjoint", 2 * (b.disjoint_max_s - 1)),
        ("maximal-gain", b.gain_cases),
        ("strict-gap", 3),
        ("separability", b.separability_cases + 4),
    ];
    let mut bad = failed(&reports);
    for (prefix, want) in counts {
        if count(prefix) != want {
            bad.push(format!("{prefix}: {} checks, expected {want}", count(prefix)));
        }
    }
    if b.triangle_cases < 100 || b.pair_cases < 100 || b.gain_cases < 200 || b.disjoint_max_s < 8 {
        bad.push("bounds below the required counts".into());
    }
    let summary: Vec<String> = counts.iter().map(|(p, n)| format!("{p} {n}")).collect();
    if bad.is_empty() {
        Ok(format!("all exact: {}", summary.join(", ")))
    } else {
        Err(bad.join("; "))
    }
}

fn beta_star() -> Verdict {
    let mut bad = Vec::new();
    let mut n = 0;
    for s in 1..=10 {
        for a in 1..=s {
            n += 1;
            let (scan, formula) = (beta_star_scan(s, a), beta_star_formula(s, a));
            if scan != formula {
                bad.push(format!("S={s} alpha={a}: scan {scan}, formula {formula}"));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{n}/{n} (S <= 10) match"))
    } else {
        Err(bad.join("; "))
    }
}

fn smallest_field_at_least(n: usize) -> Result<FieldSpec, String> {
    (n.max(2) as u64..).find_map(|q| field_of_order(q).ok()).ok_or_else(|| "no field".into())
}

fn next_field_after(q: u32) -> Result<FieldSpec, String> {
    smallest_field_at_least(q as usize + 1)
}

fn construction_validity() -> Verdict {
    let mut n_checked = 0;
    for n in 1..=8 {
        let small = smallest_field_at_least(n)?;
        let large = next_field_after(small.order())?;
        for f in [small, large] {
            let b = lib(build_half_mds_box(n, &f))?;
            let m = b.matrix();
            if m.rank() != n || !lib(symplectic_gram(m))?.is_zero() || !lib(is_half_mds(m))?.holds() {
                return Err(format!("N={n} over {f}: construction check failed"));
            }
            n_checked += 1;
        }
    }
    let f2 = lib(field_construct(2, 1))?;
    let m1 = lib(FMat::from_ints(&f2, &[[1, 1, 0, 0], [0, 0, 1, 1]]))?;
    let m2 = lib(FMat::from_ints(&f2, &[[1, 0, 1, 0], [0, 1, 0, 0]]))?;
    let (h1, h2) = (lib(is_half_mds(&m1))?, lib(is_half_mds(&m2))?);
    if h1 != HalfMds::Holds || h2.holds() {
        return Err(format!("M1 {h1:?}, M2 {h2:?}"));
    }
    Ok(format!("{n_checked} boxes (N <= 8, two fields each) valid and half-MDS; M1 holds, M2 fails"))
}

fn small_exhaustive_schemes() -> Result<Vec<CodingScheme>, String> {
    let f2 = lib(field_construct(2, 1))?;
    let mut out = vec![lib(fig2_reference_scheme(&f2))?, lib(two_sum_reference_scheme(&f2))?];
    let disjoint = |s: usize, cliques: Vec<Vec<usize>>| Problem::new(s, (1..=s).map(|x| vec![x]).collect(), cliques);
    let cases = [
        (lib(disjoint(2, vec![vec![1, 2]]))?, 3),
        (lib(disjoint(3, vec![vec![1, 2, 3]]))?, 4),
        (lib(disjoint(3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]))?, 3),
        (lib(Problem::new(2, vec![vec![1, 2]], vec![vec![1], vec![2]]))?, 2),
    ];
    for (p, q) in cases {
        let d = lib(field_of_order(q))?;
        out.push(lib(build_scheme(&p, &SchemeOptions { d: Some(d), z: ZSpec::Fixed(1), ..Default::default() }))?);
    }
    Ok(out)
}

fn oracle_agreement() -> Verdict {
    let bounds = RandomBounds { max_s: 3, max_k: 2, max_t: 2 };
    let lp = lib(lp_agreement(ORACLE_LP_CASES, ORACLE_SEED, bounds))?;
    let mut bad = failed(&lp);
    let schemes = small_exhaustive_schemes()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let (mut broken, mut caught, mut kept) = (0, 0, 0);
    for sch in &schemes {
        let r = lib(exhaustive_decode_check(sch))?;
        if !r.agree {
            bad.push(format!("{}: {} of {}", r.instance, r.main, r.oracle));
        }
        for _ in 0..MUTATIONS_PER_SCHEME {
            let (m, site, still_valid) = lib(mutate_scheme(sch, &mut rng))?;
            let r = lib(exhaustive_decode_check(&m))?;
            if still_valid {
                kept += 1;
                if !r.agree {
                    bad.push(format!("certified mutant {site:?} of {} failed decoding", sch.problem()));
                }
            } else {
                broken += 1;
                if r.agree {
                    bad.push(format!("mutant {site:?} of {} escaped", sch.problem()));
                } else {
                    caught += 1;
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{}/{} LP instances agree; {} schemes decode exhaustively; {caught}/{broken} breaking mutants caught ({kept} certificate-preserving)",
            lp.len(),
            lp.len(),
            schemes.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Table 1 reproduction", Box::new(|| timed(TABLE1_LIMIT, table1_reproduction))),
        ("Table 2 reproduction", Box::new(|| timed(TABLE2_LIMIT, table2_reproduction))),
        ("LP/closed-form equivalence", Box::new(|| timed(LP_CLOSED_FORM_LIMIT, lp_closed_form))),
        ("worked 5-sum-box example", Box::new(|| timed(FIG2_LIMIT, fig2_example))),
        ("capacity-achieving construction", Box::new(|| timed(CONSTRUCTION_LIMIT, construction))),
        ("corollary identities", Box::new(corollaries)),
        ("beta* scan", Box::new(beta_star)),
        ("construction validity suite", Box::new(construction_validity)),
        ("oracle agreement", Box::new(oracle_agreement)),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        match f() {
            Ok(m) => println!("criterion {} PASS {name}: {m}", i + 1),
            Err(m) => {
                failures += 1;
                println!("criterion {} FAIL {name}: {m}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
