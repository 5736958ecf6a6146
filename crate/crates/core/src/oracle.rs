//! Brute-force cross-checks for the main code paths.
//!
//! Vertex enumeration solves the capacity program with no simplex and no
//! presolve. The decode oracle runs schemes on every (or many random) data
//! realizations. The corollary suite checks the capacity identities on seeded
//! random instances and on the named reference instances.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::capacity::{beta_star_formula, beta_star_scan, capacity_lp, capacity_symmetric, maximal_dsc_gain_forms};
use crate::error::{Error, Result};
use crate::instances::{separability_cases, strict_gap_problem};
use crate::limits::{MAX_DECODE_STATES, MAX_VERTEX_ENUM_SUBSETS, MAX_VERTEX_ENUM_VARIABLES};
use crate::matrix::FMat;
use crate::model::{colex_subsets, concat_problems, lex_subsets, merged_map, triangle_substitute, Problem};
use crate::rational::Rat;
use crate::scheme::CodingScheme;

/// One oracle comparison. `agree` holds exactly when both values are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub instance: String,
    pub main: String,
    pub oracle: String,
    pub agree: bool,
    pub counterexample: Option<String>,
}

impl OracleReport {
    pub fn compare(instance: impl Into<String>, main: impl fmt::Display, oracle: impl fmt::Display) -> Self {
        let (main, oracle) = (main.to_string(), oracle.to_string());
        OracleReport { instance: instance.into(), agree: main == oracle, main, oracle, counterexample: None }
    }

    fn with_counterexample(mut self, c: Option<String>) -> Self {
        self.counterexample = c;
        self
    }
}

/// TAP output: a plan line, then `ok n desc` or `not ok n desc` per report.
pub fn render_tap(reports: &[OracleReport]) -> String {
    let mut s = format!("1..{}\n", reports.len());
    for (i, r) in reports.iter().enumerate() {
        let status = if r.agree { "ok" } else { "not ok" };
        s.push_str(&format!("{status} {} {}: {} vs {}", i + 1, r.instance, r.main, r.oracle));
        if let Some(c) = &r.counterexample {
            s.push_str(&format!(" # counterexample {c}"));
        }
        s.push('\n');
    }
    s
}

/// A dense row `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Inequality {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

struct VertexSearch<'a> {
    n: usize,
    rows: Vec<&'a Inequality>,
    objective: &'a [Rat],
    best: Option<(Rat, Vec<Rat>)>,
    visited: u128,
}

struct BasisRow {
    pivot: usize,
    coeffs: Vec<Rat>,
    rhs: Rat,
}

impl VertexSearch<'_> {
    fn dfs(&mut self, start: usize, basis: &mut Vec<BasisRow>) -> Result<()> {
        if basis.len() == self.n {
            self.evaluate(basis);
            return Ok(());
        }
        for i in start..self.rows.len() {
            if self.rows.len() - i < self.n - basis.len() {
                break;
            }
            self.visited += 1;
            if self.visited > MAX_VERTEX_ENUM_SUBSETS {
                return Err(Error::guard("vertex enumeration subsets", self.visited, MAX_VERTEX_ENUM_SUBSETS));
            }
            let mut coeffs = self.rows[i].coeffs.clone();
            let mut rhs = self.rows[i].rhs.clone();
            for b in basis.iter() {
                let f = coeffs[b.pivot].clone();
                if !f.is_zero() {
                    for (c, bc) in coeffs.iter_mut().zip(&b.coeffs) {
                        if !bc.is_zero() {
                            *c -= &(&f * bc);
                        }
                    }
                    rhs -= &(&f * &b.rhs);
                }
            }
            // Dependent rows never extend a basis.
            let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else { continue };
            let inv = coeffs[pivot].recip().expect("nonzero");
            let coeffs: Vec<Rat> = coeffs.iter().map(|c| c * &inv).collect();
            basis.push(BasisRow { pivot, coeffs, rhs: &rhs * &inv });
            self.dfs(i + 1, basis)?;
            basis.pop();
        }
        Ok(())
    }

    fn evaluate(&mut self, basis: &[BasisRow]) {
        let mut x = vec![Rat::zero(); self.n];
        for b in basis.iter().rev() {
            let rest: Rat = b
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(j, c)| j != b.pivot && !c.is_zero())
                .map(|(j, c)| c * &x[j])
                .sum();
            x[b.pivot] = &b.rhs - &rest;
        }
        let feasible = self.rows.iter().all(|r| r.coeffs.iter().zip(&x).map(|(a, v)| a * v).sum::<Rat>() >= r.rhs);
        if !feasible {
            return;
        }
        let value: Rat = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
            self.best = Some((value, x));
        }
    }
}

/// Minimizes `objective · x` over `{x ≥ 0, rows}` by visiting every basic
/// solution. Returns `None` when no vertex is feasible.
pub fn vertex_enum_min(objective: &[Rat], rows: &[Inequality]) -> Result<Option<(Rat, Vec<Rat>)>> {
    let n = objective.len();
    if n > MAX_VERTEX_ENUM_VARIABLES {
        return Err(Error::guard("vertex enumeration variables", n as u128, MAX_VERTEX_ENUM_VARIABLES as u128));
    }
    if rows.iter().any(|r| r.coeffs.len() != n) {
        return Err(Error::dims("vertex enumeration", "row width differs from the variable count"));
    }
    let nonneg: Vec<Inequality> = (0..n)
        .map(|j| Inequality {
            coeffs: (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect(),
            rhs: Rat::zero(),
        })
        .collect();
    let mut search = VertexSearch { n, rows: rows.iter().chain(&nonneg).collect(), objective, best: None, visited: 0 };
    search.dfs(0, &mut Vec::new())?;
    Ok(search.best)
}

/// The capacity program with one `m_{t,k}` per clique and stream, written out
/// with no simplification: `m ≤ ΣΔ_t`, `m ≤ 2·ΣΔ_{E(t)∩W(k)}`, `Σ_t m_{t,k} ≥ 1`.
pub fn linearized_system(p: &Problem) -> (Vec<Rat>, Vec<Inequality>) {
    let gamma = p.gamma();
    let (k_count, t_count) = (p.k(), p.t());
    let n = gamma + k_count * t_count;
    let m_var = |t: usize, k: usize| gamma + t * k_count + k;
    let mut rows = Vec::new();
    let mut off = 0;
    for (t, e) in p.cliques().iter().enumerate() {
        for (k, w) in p.streams().iter().enumerate() {
            let mut all = vec![Rat::zero(); n];
            let mut inside = vec![Rat::zero(); n];
            for (j, s) in e.iter().enumerate() {
                all[off + j] = Rat::one();
                if w.contains(s) {
                    inside[off + j] = Rat::from_int(2);
                }
            }
            all[m_var(t, k)] = Rat::from_int(-1);
            inside[m_var(t, k)] = Rat::from_int(-1);
            rows.push(Inequality { coeffs: all, rhs: Rat::zero() });
            rows.push(Inequality { coeffs: inside, rhs: Rat::zero() });
        }
        off += e.len();
    }
    for k in 0..k_count {
        let mut c = vec![Rat::zero(); n];
        for t in 0..t_count {
            c[m_var(t, k)] = Rat::one();
        }
        rows.push(Inequality { coeffs: c, rhs: Rat::one() });
    }
    let objective = (0..n).map(|j| if j < gamma { Rat::one() } else { Rat::zero() }).collect();
    (objective, rows)
}

/// Optimal download cost by vertex enumeration of [`linearized_system`].
pub fn lp_vertex_enum(p: &Problem) -> Result<Rat> {
    let (objective, rows) = linearized_system(p);
    vertex_enum_min(&objective, &rows)?.map(|(v, _)| v).ok_or(Error::Lp("vertex enumeration found no feasible vertex"))
}

/// Optimal cost of the per-server fully entangled region
/// `{ΣΔ ≥ 1, Σ_{s∈W(k)} Δ_s ≥ 1/2}` by vertex enumeration.
pub fn fullent_vertex_enum(p: &Problem) -> Result<Rat> {
    let s = p.s();
    let mut rows = vec![Inequality { coeffs: vec![Rat::one(); s], rhs: Rat::one() }];
    for w in p.streams() {
        let coeffs = (1..=s).map(|i| if w.contains(&i) { Rat::one() } else { Rat::zero() }).collect();
        rows.push(Inequality { coeffs, rhs: Rat::new(1, 2) });
    }
    vertex_enum_min(&vec![Rat::one(); s], &rows)?
        .map(|(v, _)| v)
        .ok_or(Error::Lp("vertex enumeration found no feasible vertex"))
}

/// Size bounds for random problems.
#[derive(Clone, Copy, Debug)]
pub struct RandomBounds {
    pub max_s: usize,
    pub max_k: usize,
    pub max_t: usize,
}

fn random_subset(rng: &mut impl Rng, s: usize) -> Vec<usize> {
    loop {
        let v: Vec<usize> = (1..=s).filter(|_| rng.gen_bool(0.5)).collect();
        if !v.is_empty() {
            return v;
        }
    }
}

/// A random problem with nonempty streams and cliques within `b`.
pub fn random_problem(rng: &mut impl Rng, b: RandomBounds) -> Problem {
    let s = rng.gen_range(1..=b.max_s);
    let k = rng.gen_range(1..=b.max_k);
    let t = rng.gen_range(1..=b.max_t);
    let streams = (0..k).map(|_| random_subset(rng, s)).collect();
    let cliques = (0..t).map(|_| random_subset(rng, s)).collect();
    Problem::new(s, streams, cliques).expect("random subsets are valid")
}

/// Simplex against vertex enumeration on `cases` random problems.
pub fn lp_agreement(cases: usize, seed: u64, b: RandomBounds) -> Result<Vec<OracleReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let problems: Vec<Problem> = (0..cases).map(|_| random_problem(&mut rng, b)).collect();
    problems
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let main = match capacity_lp(p) {
                Ok(c) => c.optimal_cost.to_string(),
                Err(Error::Lp(_)) => "infeasible".to_string(),
                Err(e) => return Err(e),
            };
            let (objective, rows) = linearized_system(p);
            let oracle = vertex_enum_min(&objective, &rows)?.map_or("infeasible".to_string(), |(v, _)| v.to_string());
            Ok(OracleReport::compare(format!("lp-vs-vertex #{} {p}", i + 1), main, oracle))
        })
        .collect()
}

/// Every data realization in index order, `chunk` at a time. Returns the
/// number checked and the first failing realization.
fn decode_realizations(
    sch: &CodingScheme,
    indices: impl Iterator<Item = Vec<Vec<u32>>>,
) -> Result<(u64, Option<String>)> {
    const CHUNK: usize = 4096;
    let (k, r, q) = (sch.problem().k(), sch.rank(), sch.field().clone());
    let mut checked = 0u64;
    let mut batch: Vec<Vec<Vec<u32>>> = Vec::with_capacity(CHUNK);
    let mut indices = indices.peekable();
    while indices.peek().is_some() {
        batch.clear();
        batch.extend(indices.by_ref().take(CHUNK));
        let data: Vec<FMat> = (0..k).map(|kk| FMat::from_fn(&q, r, batch.len(), |i, j| batch[j][kk][i])).collect();
        let out = sch.simulate_batch(&data)?;
        for (j, real) in batch.iter().enumerate() {
            let ok = (0..r).all(|i| out.at(i, j) == real.iter().fold(0, |acc, d| q.add(acc, d[i])));
            if !ok {
                return Ok((checked, Some(format!("{real:?}"))));
            }
            checked += 1;
        }
    }
    Ok((checked, None))
}

/// Runs the scheme on all `q^(K·R)` data realizations.
pub fn exhaustive_decode_check(sch: &CodingScheme) -> Result<OracleReport> {
    let (k, r, q) = (sch.problem().k(), sch.rank(), sch.field().order() as u128);
    let symbols = (k * r) as u32;
    let states = q.checked_pow(symbols).filter(|&s| s <= MAX_DECODE_STATES).ok_or_else(|| {
        Error::guard("decode realizations", q.checked_pow(symbols).unwrap_or(u128::MAX), MAX_DECODE_STATES)
    })?;
    let qq = q as u64;
    let realizations = (0..states as u64).map(move |mut x| {
        (0..k)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let d = (x % qq) as u32;
                        x /= qq;
                        d
                    })
                    .collect()
            })
            .collect()
    });
    let (checked, bad) = decode_realizations(sch, realizations)?;
    let name = format!("exhaustive decode {} over {}", sch.problem(), sch.field());
    Ok(OracleReport::compare(name, checked, states).with_counterexample(bad))
}

/// Runs the scheme on `trials` seeded random realizations.
pub fn random_decode_check(sch: &CodingScheme, trials: u64, seed: u64) -> Result<OracleReport> {
    let (k, r, q) = (sch.problem().k(), sch.rank(), sch.field().order());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let realizations =
        (0..trials).map(move |_| (0..k).map(|_| (0..r).map(|_| rng.gen_range(0..q)).collect()).collect());
    let (checked, bad) = decode_realizations(sch, realizations)?;
    let name = format!("random decode {} over {} seed {seed}", sch.problem(), sch.field());
    Ok(OracleReport::compare(name, checked, trials).with_counterexample(bad))
}

/// Exhaustive when the guard allows it, otherwise `trials` random realizations.
pub fn decode_check(sch: &CodingScheme, trials: u64, seed: u64) -> Result<OracleReport> {
    match exhaustive_decode_check(sch) {
        Err(Error::Guard { .. }) => random_decode_check(sch, trials, seed),
        other => other,
    }
}

/// Which part of a scheme a mutation touched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationSite {
    Decoder,
    Encoder(usize),
}

/// Adds a random nonzero value to one random decoder or encoder entry.
/// Returns the mutant and whether its certificate still holds (an entry the
/// decoding never reads leaves the scheme correct).
pub fn mutate_scheme(sch: &CodingScheme, rng: &mut impl Rng) -> Result<(CodingScheme, MutationSite, bool)> {
    let q = sch.field().clone();
    let delta = rng.gen_range(1..q.order());
    let mut choices: Vec<MutationSite> = vec![MutationSite::Decoder];
    choices.extend(
        (1..=sch.problem().k())
            .filter(|&k| sch.encoder(k).rows() * sch.encoder(k).cols() > 0)
            .map(MutationSite::Encoder),
    );
    let site = *choices.choose(rng).expect("nonempty");
    let bump = |m: &FMat, rng: &mut dyn rand::RngCore| {
        let mut m = m.clone();
        let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        m.put(i, j, q.add(m.at(i, j), delta));
        m
    };
    let mutant = match site {
        MutationSite::Decoder => sch.clone().with_decoder(bump(sch.decoder(), rng))?,
        MutationSite::Encoder(k) => sch.clone().with_encoder(k, bump(sch.encoder(k), rng))?,
    };
    let still_valid = mutant.check().is_ok();
    Ok((mutant, site, still_valid))
}

fn pairs_problem(p: &Problem) -> Result<Problem> {
    p.with_cliques(lex_subsets(p.s(), 2))
}

fn full_problem(p: &Problem) -> Result<Problem> {
    p.with_cliques(vec![(1..=p.s()).collect()])
}

fn singletons_problem(p: &Problem) -> Result<Problem> {
    p.with_cliques((1..=p.s()).map(|s| vec![s]).collect())
}

fn fullent_cost(p: &Problem) -> Result<Rat> {
    Ok(capacity_lp(&full_problem(p)?)?.optimal_cost)
}

fn has_max_gain(p: &Problem) -> Result<bool> {
    let full = capacity_lp(&full_problem(p)?)?.capacity;
    let un = capacity_lp(&singletons_problem(p)?)?.capacity;
    Ok(full == &un * &Rat::from_int(2))
}

/// Counts per random family in [`check_corollaries`].
#[derive(Clone, Copy, Debug)]
pub struct CorollaryBounds {
    pub max_s: usize,
    pub max_k: usize,
    pub triangle_cases: usize,
    pub pair_cases: usize,
    pub gain_cases: usize,
    pub separability_cases: usize,
    pub disjoint_max_s: usize,
}

impl Default for CorollaryBounds {
    fn default() -> Self {
        CorollaryBounds {
            max_s: 5,
            max_k: 4,
            triangle_cases: 100,
            pair_cases: 100,
            gain_cases: 200,
            separability_cases: 100,
            disjoint_max_s: 8,
        }
    }
}

enum Case {
    Triangle(Problem),
    Pairs(Problem),
    Gain(Problem),
    Separability(Problem, Problem),
    Disjoint(usize),
}

fn run_case(i: usize, case: &Case) -> Result<Vec<OracleReport>> {
    Ok(match case {
        Case::Triangle(p) => {
            let t = p.cliques().iter().position(|e| e.len() == 3).expect("generated with a 3-clique") + 1;
            let q = triangle_substitute(p, t)?;
            vec![OracleReport::compare(
                format!("triangle-substitution #{i} {p}"),
                capacity_lp(p)?.capacity,
                capacity_lp(&q)?.capacity,
            )]
        }
        Case::Pairs(p) => vec![OracleReport::compare(
            format!("pair-merge #{i} {p}"),
            capacity_lp(&pairs_problem(p)?)?.capacity,
            capacity_lp(&merged_map(p)?)?.capacity,
        )],
        Case::Gain(p) => {
            let (lp, closed) = maximal_dsc_gain_forms(p)?;
            vec![OracleReport::compare(format!("maximal-gain #{i} {p}"), lp, closed)]
        }
        Case::Separability(a, b) => {
            let joined = concat_problems(a, b)?;
            let additive = fullent_cost(&joined)? == &fullent_cost(a)? + &fullent_cost(b)?;
            let both_max = has_max_gain(a)? && has_max_gain(b)?;
            vec![OracleReport::compare(
                format!("separability #{i} {a} | {b}"),
                format!("additive={additive}"),
                format!("additive={both_max}"),
            )]
        }
        Case::Disjoint(s) => {
            let p = Problem::new(*s, (1..=*s).map(|x| vec![x]).collect(), vec![(1..=*s).collect()])?;
            let want = Rat::new(2, *s as i64);
            vec![
                OracleReport::compare(format!("disjoint S={s} full"), capacity_lp(&p)?.capacity, &want),
                OracleReport::compare(
                    format!("disjoint S={s} pairs"),
                    capacity_lp(&pairs_problem(&p)?)?.capacity,
                    &want,
                ),
            ]
        }
    })
}

fn random_streams(rng: &mut impl Rng, s: usize, max_k: usize) -> Vec<Vec<usize>> {
    (0..rng.gen_range(1..=max_k)).map(|_| random_subset(rng, s)).collect()
}

/// The capacity identities on seeded random instances and on the named ones.
pub fn check_corollaries(seed: u64, b: CorollaryBounds) -> Result<Vec<OracleReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    let max_s = b.max_s.max(3);
    for _ in 0..b.triangle_cases {
        let s = rng.gen_range(3..=max_s);
        let streams = random_streams(&mut rng, s, b.max_k);
        let mut tri = rand::seq::index::sample(&mut rng, s, 3).into_vec();
        tri.iter_mut().for_each(|x| *x += 1);
        let mut cliques = vec![tri];
        for _ in 0..rng.gen_range(0..=2) {
            cliques.push(random_subset(&mut rng, s));
        }
        for w in &streams {
            if !cliques.iter().any(|e| e.iter().any(|x| w.contains(x))) {
                cliques.push(vec![w[0]]);
            }
        }
        cliques.shuffle(&mut rng);
        cases.push(Case::Triangle(Problem::new(s, streams, cliques)?));
    }
    for _ in 0..b.pair_cases {
        let s = rng.gen_range(2..=max_s);
        let streams = random_streams(&mut rng, s, b.max_k);
        cases.push(Case::Pairs(Problem::new(s, streams, vec![vec![1]])?));
    }
    for _ in 0..b.gain_cases {
        let s = rng.gen_range(1..=max_s);
        let streams = random_streams(&mut rng, s, b.max_k);
        cases.push(Case::Gain(Problem::new(s, streams, vec![(1..=s).collect()])?));
    }
    for _ in 0..b.separability_cases {
        let half = |rng: &mut ChaCha8Rng| {
            let s = rng.gen_range(1..=3);
            let streams = random_streams(rng, s, 3);
            Problem::new(s, streams, vec![(1..=s).collect()])
        };
        let (x, y) = (half(&mut rng)?, half(&mut rng)?);
        cases.push(Case::Separability(x, y));
    }
    cases.extend((2..=b.disjoint_max_s).map(Case::Disjoint));

    let mut reports: Vec<OracleReport> = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| run_case(i + 1, c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    reports.extend(named_corollary_checks()?);
    Ok(reports)
}

/// The strict 5-party gap and the two separability examples.
pub fn named_corollary_checks() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let c5 = capacity_lp(&strict_gap_problem(vec![(1..=5).collect()])?)?.capacity;
    let c4 = capacity_lp(&strict_gap_problem(colex_subsets(5, 4))?)?.capacity;
    out.push(OracleReport::compare("strict-gap C^(5)", &c5, Rat::new(6, 7)));
    out.push(OracleReport::compare("strict-gap C^(4)", &c4, Rat::new(5, 6)));
    out.push(OracleReport::compare("strict-gap C^(5) > C^(4)", c5 > c4, true));
    for c in separability_cases() {
        let joined = fullent_cost(&c.joined)?;
        let sum = &fullent_cost(&c.left)? + &fullent_cost(&c.right)?;
        let want = if c.separable { Rat::from_int(2) } else { Rat::new(5, 4) };
        out.push(OracleReport::compare(format!("separability 1/C3 {}", c.joined), &joined, want));
        out.push(OracleReport::compare(format!("separability verdict {}", c.joined), joined == sum, c.separable));
    }
    Ok(out)
}

/// Definitional β* scan against the closed form for `S ≤ max_s`.
pub fn beta_star_reports(max_s: usize) -> Vec<OracleReport> {
    (1..=max_s)
        .flat_map(|s| (1..=s).map(move |a| (s, a)))
        .map(|(s, a)| {
            OracleReport::compare(format!("beta-star S={s} alpha={a}"), beta_star_scan(s, a), beta_star_formula(s, a))
        })
        .collect()
}

/// LP against the closed form for every symmetric instance with `S ≤ max_s`.
pub fn symmetric_lp_reports(max_s: usize) -> Result<Vec<OracleReport>> {
    let params: Vec<_> = (1..=max_s).flat_map(|s| (1..=s).flat_map(move |a| (1..=s).map(move |b| (s, a, b)))).collect();
    params
        .par_iter()
        .map(|&(s, a, b)| {
            let sp = crate::model::SymmetricParams::new(s, a, b)?;
            let lp = capacity_lp(&crate::model::symmetric_problem(sp)?)?.capacity;
            Ok(OracleReport::compare(format!("symmetric S={s} alpha={a} beta={b}"), lp, capacity_symmetric(sp)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::build_lp;
    use crate::field::field_construct;
    use crate::instances::fig1_problem;
    use crate::scheme::{build_scheme, fig2_reference_scheme, two_sum_reference_scheme, SchemeOptions};

    #[test]
    fn vertex_enum_examples() {
        let p = fig1_problem();
        assert_eq!(fullent_vertex_enum(&p).unwrap(), Rat::new(5, 4));
        assert_eq!(lp_vertex_enum(&p).unwrap(), Rat::new(5, 4));
        let one = Problem::new(1, vec![vec![1]], vec![vec![1]]).unwrap();
        assert_eq!(lp_vertex_enum(&one).unwrap(), Rat::one());
        let un = Problem::new(2, vec![vec![1], vec![2]], vec![vec![1], vec![2]]).unwrap();
        assert_eq!(lp_vertex_enum(&un).unwrap(), Rat::from_int(2));
        let uncovered = Problem::new(2, vec![vec![2]], vec![vec![1]]).unwrap();
        assert!(lp_vertex_enum(&uncovered).is_err());
        let big = crate::model::symmetric_problem(crate::model::SymmetricParams::new(5, 2, 2).unwrap()).unwrap();
        assert!(matches!(lp_vertex_enum(&big), Err(Error::Guard { .. })));
        let rows = vec![Inequality { coeffs: vec![Rat::from_int(-1)], rhs: Rat::one() }];
        assert_eq!(vertex_enum_min(&[Rat::one()], &rows).unwrap(), None);
    }

    #[test]
    fn lp_agrees_with_vertex_enum() {
        let b = RandomBounds { max_s: 3, max_k: 2, max_t: 2 };
        let reports = lp_agreement(60, 7, b).unwrap();
        assert!(reports.iter().all(|r| r.agree), "{}", render_tap(&reports));
        assert!(reports.iter().any(|r| r.main == "infeasible"));
        assert!(reports.iter().any(|r| r.main != "infeasible"));
    }

    #[test]
    fn dropped_constraint_is_detected() {
        let p = fig1_problem();
        let mut lp = build_lp(&p);
        let last = lp.rows.len() - 1;
        lp.rows.remove(last);
        let weakened = lp.solve().unwrap().value;
        assert_ne!(weakened, lp_vertex_enum(&p).unwrap());
    }

    #[test]
    fn decode_oracle_and_mutations() {
        let f2 = field_construct(2, 1).unwrap();
        let fig2 = fig2_reference_scheme(&f2).unwrap();
        let r = exhaustive_decode_check(&fig2).unwrap();
        assert!(r.agree);
        assert_eq!(r.main, "65536");

        let bad = fig2.clone().with_decoder({
            let mut d = fig2.decoder().clone();
            d.put(0, 0, 1 - d.at(0, 0));
            d
        });
        let r = exhaustive_decode_check(&bad.unwrap()).unwrap();
        assert!(!r.agree);
        assert!(r.counterexample.is_some());

        let built = build_scheme(&fig1_problem(), &SchemeOptions::default()).unwrap();
        assert!(matches!(exhaustive_decode_check(&built), Err(Error::Guard { .. })));
        assert!(decode_check(&built, 2000, 1).unwrap().agree);

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let two = two_sum_reference_scheme(&field_construct(3, 1).unwrap()).unwrap();
        for sch in [&fig2, &two, &built] {
            for _ in 0..8 {
                let (m, _, still_valid) = mutate_scheme(sch, &mut rng).unwrap();
                let r = random_decode_check(&m, 2000, 3).unwrap();
                assert_eq!(r.agree, still_valid);
            }
        }
    }

    #[test]
    fn corollaries_small() {
        let b = CorollaryBounds {
            max_s: 4,
            max_k: 3,
            triangle_cases: 10,
            pair_cases: 10,
            gain_cases: 20,
            separability_cases: 10,
            disjoint_max_s: 5,
        };
        let reports = check_corollaries(3, b).unwrap();
        assert!(reports.iter().all(|r| r.agree), "{}", render_tap(&reports));
        assert!(reports.iter().any(|r| r.instance == "strict-gap C^(5) > C^(4)"));
    }

    #[test]
    fn tap_format() {
        let rs = vec![OracleReport::compare("a", 1, 1), OracleReport::compare("b", 1, 2)];
        assert_eq!(render_tap(&rs), "1..2\nok 1 a: 1 vs 1\nnot ok 2 b: 1 vs 2\n");
        assert!(beta_star_reports(6).iter().all(|r| r.agree));
        assert!(symmetric_lp_reports(3).unwrap().iter().all(|r| r.agree));
    }
}
