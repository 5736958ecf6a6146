//! Exact capacities: the general linear program, the per-server special cases
//! and the closed forms for symmetric instances.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lp::CoveringLp;
use crate::model::{Problem, SymmetricParams};
use crate::rational::Rat;

/// Download costs Δ_{t,s}, ordered by clique and then ascending server.
pub type CostTuple = Vec<Rat>;

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityResult {
    pub optimal_cost: Rat,
    pub capacity: Rat,
    pub witness: CostTuple,
    /// `aux[t][k] = min(ΣΔ_t, 2ΣΔ_{E(t)∩W(k)})` at the witness.
    pub aux: Vec<Vec<Rat>>,
}

/// `(t, s)` pairs in cost-tuple order, both 1-based.
pub fn cost_index(p: &Problem) -> Vec<(usize, usize)> {
    p.cliques().iter().enumerate().flat_map(|(t, e)| e.iter().map(move |&s| (t + 1, s))).collect()
}

/// The min terms `min(ΣΔ_t, 2ΣΔ_{E(t)∩W(k)})`, indexed `[t][k]`.
pub fn min_terms(p: &Problem, d: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    if d.len() != p.gamma() {
        return Err(Error::dims("cost tuple", format!("length {} but Γ = {}", d.len(), p.gamma())));
    }
    let two = Rat::from_int(2);
    let mut off = 0;
    let mut out = Vec::with_capacity(p.t());
    for e in p.cliques() {
        let costs = &d[off..off + e.len()];
        off += e.len();
        let total: Rat = costs.iter().sum();
        out.push(
            p.streams()
                .iter()
                .map(|w| {
                    let inside: Rat = e.iter().zip(costs).filter(|(s, _)| w.contains(s)).map(|(_, c)| c).sum();
                    Rat::min(&total, &(&two * &inside))
                })
                .collect(),
        );
    }
    Ok(out)
}

/// Membership in the feasible download-cost region.
pub fn feasible(p: &Problem, d: &[Rat]) -> Result<bool> {
    if d.iter().any(Rat::is_negative) {
        return Ok(false);
    }
    let terms = min_terms(p, d)?;
    Ok((0..p.k()).all(|k| terms.iter().map(|row| &row[k]).sum::<Rat>() >= Rat::one()))
}

fn finish(p: &Problem, value: Rat, witness: CostTuple) -> Result<CapacityResult> {
    let capacity = value.recip().ok_or(Error::Lp("degenerate: zero optimum"))?;
    let aux = min_terms(p, &witness)?;
    debug_assert!(feasible(p, &witness)?);
    Ok(CapacityResult { optimal_cost: value, capacity, witness, aux })
}

/// The linearized program for a general problem.
///
/// Pairs (t, k) with an empty intersection contribute nothing, and pairs with
/// E(t) ⊆ W(k) contribute ΣΔ_t directly; only the remaining pairs need an
/// auxiliary variable bounded by both arguments of the min.
pub fn build_lp(p: &Problem) -> CoveringLp {
    let gamma = p.gamma();
    let mut offsets = Vec::with_capacity(p.t());
    let mut off = 0;
    for e in p.cliques() {
        offsets.push(off);
        off += e.len();
    }
    let mut rows = Vec::new();
    let mut k_rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); p.k()];
    let mut n_vars = gamma;
    for (t, e) in p.cliques().iter().enumerate() {
        let all: Vec<usize> = (offsets[t]..offsets[t] + e.len()).collect();
        for (k, w) in p.streams().iter().enumerate() {
            let inside: Vec<usize> =
                e.iter().enumerate().filter(|(_, s)| w.contains(s)).map(|(i, _)| offsets[t] + i).collect();
            if inside.is_empty() {
                continue;
            }
            if inside.len() == e.len() {
                k_rows[k].extend(all.iter().map(|&j| (j, Rat::one())));
                continue;
            }
            let m = n_vars;
            n_vars += 1;
            let mut total: Vec<(usize, Rat)> = all.iter().map(|&j| (j, Rat::one())).collect();
            total.push((m, -Rat::one()));
            rows.push((total, Rat::zero()));
            let mut twice: Vec<(usize, Rat)> = inside.iter().map(|&j| (j, Rat::from_int(2))).collect();
            twice.push((m, -Rat::one()));
            rows.push((twice, Rat::zero()));
            k_rows[k].push((m, Rat::one()));
        }
    }
    let mut objective = vec![Rat::one(); gamma];
    objective.resize(n_vars, Rat::zero());
    let mut lp = CoveringLp::new(n_vars, objective);
    for row in k_rows {
        lp.push(row, Rat::one());
    }
    for (c, r) in rows {
        lp.push(c, r);
    }
    lp
}

/// Capacity of a general problem via the exact simplex.
pub fn capacity_lp(p: &Problem) -> Result<CapacityResult> {
    let sol = build_lp(p).solve()?;
    let witness = sol.x[..p.gamma()].to_vec();
    finish(p, sol.value, witness)
}

fn fully_entangled(p: &Problem) -> Result<Problem> {
    p.with_cliques(vec![(1..=p.s()).collect()])
}

fn unentangled(p: &Problem) -> Result<Problem> {
    p.with_cliques((1..=p.s()).map(|s| vec![s]).collect())
}

/// Per-server program: ΣΔ ≥ 1 and Σ_{W(k)} Δ ≥ 1/2. Uses only the streams of `p`.
pub fn capacity_fullent(p: &Problem) -> Result<CapacityResult> {
    let s = p.s();
    let mut lp = CoveringLp::new(s, vec![Rat::one(); s]);
    lp.push((0..s).map(|j| (j, Rat::one())).collect(), Rat::one());
    for w in p.streams() {
        lp.push(w.iter().map(|&j| (j - 1, Rat::one())).collect(), Rat::new(1, 2));
    }
    let sol = lp.solve()?;
    finish(&fully_entangled(p)?, sol.value, sol.x)
}

/// Per-server program: Σ_{W(k)} Δ ≥ 1. Uses only the streams of `p`.
pub fn capacity_unent(p: &Problem) -> Result<CapacityResult> {
    let s = p.s();
    let mut lp = CoveringLp::new(s, vec![Rat::one(); s]);
    for w in p.streams() {
        lp.push(w.iter().map(|&j| (j - 1, Rat::one())).collect(), Rat::one());
    }
    let sol = lp.solve()?;
    finish(&unentangled(p)?, sol.value, sol.x)
}

/// Ratio of the capacity of `p` to the unentangled capacity of its streams.
pub fn dsc_gain(p: &Problem) -> Result<Rat> {
    Ok(capacity_lp(p)?.capacity / capacity_unent(p)?.capacity)
}

/// Both sides of the maximal-gain identity: the LP ratio C_fullent / C_unent
/// and the closed form min(2, 1 / C_unent).
pub fn maximal_dsc_gain_forms(p: &Problem) -> Result<(Rat, Rat)> {
    let full = capacity_fullent(p)?.capacity;
    let un = capacity_unent(p)?.capacity;
    let closed = Rat::min(&Rat::from_int(2), &un.recip().expect("capacity is positive"));
    Ok((full / &un, closed))
}

pub fn maximal_dsc_gain(p: &Problem) -> Result<Rat> {
    let (lp, closed) = maximal_dsc_gain_forms(p)?;
    if lp != closed {
        return Err(Error::Mismatch(format!("maximal DSC gain: LP ratio {lp} vs closed form {closed}")));
    }
    Ok(lp)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn int(v: BigInt) -> Rat {
    Rat::from_big(BigRational::from_integer(v))
}

/// The three closed forms of the symmetric capacity, in the order
/// (sum of min terms, 2α/S minus excess, 1 minus deficit).
pub fn symmetric_forms(params: SymmetricParams) -> [Rat; 3] {
    let SymmetricParams { s, alpha: a, beta: b } = params;
    let t = binomial(s, b);
    let scale = int(BigInt::from(b) * t);
    let term = |g: usize| binomial(a, g) * binomial(s - a, b - g);
    let lo = (a + b).saturating_sub(s);

    let f1: Rat = (lo..=a.min(b)).map(|g| int(BigInt::from(b.min(2 * g)) * term(g))).sum::<Rat>() / &scale;

    let lo2 = lo.max(b.div_ceil(2));
    let excess: Rat = (lo2..=a.min(b)).map(|g| int(BigInt::from(2 * g - b) * term(g))).sum();
    let f2 = Rat::new(2 * a as i64, s as i64) - excess / &scale;

    let hi3 = a.min(b / 2);
    let deficit: Rat =
        if lo <= hi3 { (lo..=hi3).map(|g| int(BigInt::from(b - 2 * g) * term(g))).sum() } else { Rat::zero() };
    let f3 = Rat::one() - deficit / &scale;
    [f1, f2, f3]
}

/// Symmetric capacity C_α^(β) for S servers. Panics if the three closed forms
/// disagree, which would indicate an arithmetic bug.
pub fn capacity_symmetric(params: SymmetricParams) -> Rat {
    let [f1, f2, f3] = symmetric_forms(params);
    assert!(f1 == f2 && f2 == f3, "symmetric closed forms disagree for {params:?}: {f1}, {f2}, {f3}");
    f1
}

/// Smallest β reaching the fully-entangled capacity, from the piecewise formula.
pub fn beta_star_formula(s: usize, alpha: usize) -> usize {
    if alpha == s {
        1
    } else if alpha <= s / 2 {
        2 * alpha
    } else {
        2 * (s - alpha)
    }
}

/// Smallest β reaching the fully-entangled capacity, by scanning the closed form.
pub fn beta_star_scan(s: usize, alpha: usize) -> usize {
    let full = capacity_symmetric(SymmetricParams { s, alpha, beta: s });
    (1..=s).find(|&b| capacity_symmetric(SymmetricParams { s, alpha, beta: b }) == full).unwrap_or(s)
}

pub fn beta_star(s: usize, alpha: usize) -> Result<usize> {
    SymmetricParams::new(s, alpha, 1)?;
    let (f, scan) = (beta_star_formula(s, alpha), beta_star_scan(s, alpha));
    if f != scan {
        return Err(Error::Mismatch(format!("beta* for S={s}, alpha={alpha}: formula {f}, scan {scan}")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_problem, symmetric_problem};

    fn fig1(cliques: &str) -> Problem {
        let text = format!("field 2\nservers 4\nstream a: 1 2\nstream b: 1 3\nstream c: 2 3\nstream d: 4\n{cliques}");
        parse_problem(&text).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn feasibility_examples() {
        let p = fig1("entangle full\n");
        assert!(feasible(&p, &[r(1, 4), r(1, 4), r(1, 4), r(1, 2)]).unwrap());
        assert!(!feasible(&p, &[r(1, 8), r(1, 8), r(1, 8), r(1, 2)]).unwrap());
        assert!(!feasible(&p, &vec![Rat::zero(); 4]).unwrap());
        assert!(feasible(&p, &vec![r(1, 4); 3]).is_err());
    }

    #[test]
    fn lp_examples() {
        assert_eq!(capacity_lp(&fig1("entangle full\n")).unwrap().capacity, r(4, 5));
        assert_eq!(capacity_lp(&fig1("entangle none\n")).unwrap().capacity, r(2, 5));
        assert_eq!(capacity_lp(&fig1("clique: 1 2\nclique: 2 3 4\n")).unwrap().capacity, r(2, 3));
    }

    #[test]
    fn per_server_examples() {
        let p = fig1("entangle full\n");
        let full = capacity_fullent(&p).unwrap();
        assert_eq!(full.capacity, r(4, 5));
        assert_eq!(full.optimal_cost, r(5, 4));
        assert_eq!(capacity_unent(&p).unwrap().capacity, r(2, 5));
        let six =
            Problem::new(5, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4], vec![5]], vec![vec![1]])
                .unwrap();
        assert_eq!(capacity_fullent(&six).unwrap().capacity, r(6, 7));
        let one = Problem::new(3, vec![vec![1, 2, 3]], vec![vec![1]]).unwrap();
        assert_eq!(capacity_fullent(&one).unwrap().capacity, Rat::one());
        assert_eq!(capacity_unent(&one).unwrap().capacity, Rat::one());
        let disjoint = Problem::new(5, (1..=5).map(|s| vec![s]).collect(), vec![vec![1]]).unwrap();
        assert_eq!(capacity_unent(&disjoint).unwrap().capacity, r(1, 5));
    }

    #[test]
    fn gains() {
        let p = fig1("entangle full\n");
        assert_eq!(maximal_dsc_gain(&p).unwrap(), Rat::from_int(2));
        let p3 = fig1("clique: 1 2 3\nclique: 1 2 4\nclique: 1 3 4\nclique: 2 3 4\n");
        assert_eq!(dsc_gain(&p3).unwrap(), r(15, 8));
        let single = Problem::new(2, vec![vec![1]], vec![vec![1, 2]]).unwrap();
        assert_eq!(maximal_dsc_gain(&single).unwrap(), Rat::one());
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(capacity_symmetric(SymmetricParams::new(8, 2, 2).unwrap()), r(13, 28));
        assert_eq!(capacity_symmetric(SymmetricParams::new(8, 4, 4).unwrap()), r(61, 70));
        for s in 1..=9 {
            for b in 1..=s {
                assert_eq!(capacity_symmetric(SymmetricParams::new(s, s, b).unwrap()), Rat::one());
            }
        }
    }

    #[test]
    fn beta_star_examples() {
        let got: Vec<usize> = (1..=8).map(|a| beta_star(8, a).unwrap()).collect();
        assert_eq!(got, [2, 4, 6, 8, 6, 4, 2, 1]);
        assert_eq!(beta_star(2, 1).unwrap(), 2);
        assert_eq!(beta_star(5, 5).unwrap(), 1);
    }

    #[test]
    fn symmetric_lp_small() {
        for s in 1..=4 {
            for a in 1..=s {
                for b in 1..=s {
                    let params = SymmetricParams::new(s, a, b).unwrap();
                    let lp = capacity_lp(&symmetric_problem(params).unwrap()).unwrap();
                    assert_eq!(lp.capacity, capacity_symmetric(params), "S={s} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn witness_and_aux_are_consistent() {
        let p = fig1("clique: 1 2\nclique: 2 3 4\n");
        let res = capacity_lp(&p).unwrap();
        assert!(feasible(&p, &res.witness).unwrap());
        assert_eq!(res.witness.iter().sum::<Rat>(), res.optimal_cost);
        assert_eq!(&res.capacity * &res.optimal_cost, Rat::one());
        assert_eq!(res.aux.len(), p.t());
        for k in 0..p.k() {
            assert!(res.aux.iter().map(|row| &row[k]).sum::<Rat>() >= Rat::one());
        }
    }
}
