//! Exact simplex for covering programs `min cᵀx  s.t.  Ax ≥ b, x ≥ 0` with `c ≥ 0`.
//!
//! The solver pivots on the dual `max bᵀy  s.t.  Aᵀy ≤ c, y ≥ 0`, whose slack
//! basis is feasible because `c ≥ 0`, so no phase one is needed. Entering and
//! leaving variables follow Bland's rule. The primal optimum is read off the
//! objective row under the dual slack columns.

use crate::error::{Error, Result};
use crate::limits::MAX_LP_VARIABLES;
use crate::rational::Rat;

/// One `≥` row: sparse coefficients and right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rat)>,
    pub rhs: Rat,
}

#[derive(Clone, Debug, Default)]
pub struct CoveringLp {
    pub n_vars: usize,
    pub objective: Vec<Rat>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rat,
    pub x: Vec<Rat>,
    pub pivots: usize,
}

impl CoveringLp {
    pub fn new(n_vars: usize, objective: Vec<Rat>) -> Self {
        CoveringLp { n_vars, objective, rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<(usize, Rat)>, rhs: Rat) {
        self.rows.push(Row { coeffs, rhs });
    }

    /// True if `x` satisfies every row and is non-negative.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum::<Rat>() >= r.rhs)
    }

    pub fn objective_value(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn solve(&self) -> Result<LpSolution> {
        if self.n_vars > MAX_LP_VARIABLES {
            return Err(Error::guard("LP variables", self.n_vars as u128, MAX_LP_VARIABLES as u128));
        }
        if self.objective.len() != self.n_vars {
            return Err(Error::InvalidArgument("objective length differs from variable count".into()));
        }
        if self.objective.iter().any(Rat::is_negative) {
            return Err(Error::InvalidArgument("covering LP needs a non-negative objective".into()));
        }
        if self.rows.iter().flat_map(|r| &r.coeffs).any(|(j, _)| *j >= self.n_vars) {
            return Err(Error::InvalidArgument("row references an unknown variable".into()));
        }
        Tableau::from_dual(self).run()
    }
}

/// Dense tableau of the dual. Columns: `m` dual variables then `n` slacks.
struct Tableau {
    m: usize,
    n: usize,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    obj: Vec<Rat>,
    obj_value: Rat,
    basis: Vec<usize>,
}

impl Tableau {
    fn from_dual(lp: &CoveringLp) -> Self {
        let m = lp.rows.len();
        let n = lp.n_vars;
        let width = m + n;
        let mut rows = vec![vec![Rat::zero(); width]; n];
        for (i, row) in lp.rows.iter().enumerate() {
            for (j, a) in &row.coeffs {
                rows[*j][i] += a;
            }
        }
        for (j, row) in rows.iter_mut().enumerate() {
            row[m + j] = Rat::one();
        }
        let mut obj = vec![Rat::zero(); width];
        for (i, row) in lp.rows.iter().enumerate() {
            obj[i] = -&row.rhs;
        }
        Tableau { m, n, rows, rhs: lp.objective.clone(), obj, obj_value: Rat::zero(), basis: (m..m + n).collect() }
    }

    fn run(mut self) -> Result<LpSolution> {
        let mut pivots = 0;
        while let Some(col) = self.obj.iter().position(Rat::is_negative) {
            let mut best: Option<(usize, Rat)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((prow, _)) = best else {
                return Err(Error::Lp("infeasible"));
            };
            self.pivot(prow, col);
            pivots += 1;
        }
        let x = (0..self.n).map(|j| self.obj[self.m + j].clone()).collect();
        Ok(LpSolution { value: self.obj_value, x, pivots })
    }

    fn pivot(&mut self, prow: usize, col: usize) {
        let inv = self.rows[prow][col].recip().expect("pivot is nonzero");
        for v in self.rows[prow].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        self.rhs[prow] = &self.rhs[prow] * &inv;
        let nz: Vec<usize> = (0..self.rows[prow].len()).filter(|&j| !self.rows[prow][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[prow]);
        let pivot_rhs = self.rhs[prow].clone();

        let eliminate = |row: &mut Vec<Rat>, rhs: &mut Rat| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
            *rhs = &*rhs - &(&f * &pivot_rhs);
        };
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r != prow {
                eliminate(row, &mut self.rhs[r]);
            }
        }
        // Objective row: z + objᵀ(y, s) = value.
        eliminate(&mut self.obj, &mut self.obj_value);
        self.rows[prow] = pivot_row;
        self.basis[prow] = col;
    }
}
