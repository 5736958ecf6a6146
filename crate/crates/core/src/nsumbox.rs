//! N-sum boxes: transfer matrices `M = [Mˡ, Mʳ] ∈ F_q^{N×2N}`, their validity
//! and half-MDS certificates, and the dual-GRS construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::limits::MAX_EXHAUSTIVE_HALF_MDS_N;
use crate::matrix::FMat;

/// Parameters of a generalized Reed-Solomon code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    pub field: FieldSpec,
    pub k: usize,
    pub alpha: Vec<u32>,
    pub u: Vec<u32>,
}

impl GrsSpec {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.alpha.len();
        if self.u.len() != n {
            return Err(Error::InvalidArgument(format!("{} multipliers for {n} points", self.u.len())));
        }
        if self.k > n || n as u64 > self.field.order() as u64 {
            return Err(Error::InvalidArgument(format!(
                "need k <= n <= q, got k={} n={n} q={}",
                self.k,
                self.field.order()
            )));
        }
        if self.alpha.iter().chain(&self.u).any(|&a| !self.field.contains(a)) {
            return Err(Error::InvalidArgument("GRS parameter outside the field".into()));
        }
        let mut sorted = self.alpha.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("evaluation points must be distinct".into()));
        }
        if self.u.contains(&0) {
            return Err(Error::InvalidArgument("column multipliers must be nonzero".into()));
        }
        Ok(())
    }
}

/// The `k × n` generator with entry `(i, j) = u_j · α_j^(i-1)`.
pub fn grs_matrix(g: &GrsSpec) -> Result<FMat> {
    g.validate()?;
    let f = &g.field;
    Ok(FMat::from_fn(f, g.k, g.n(), |i, j| f.mul(g.u[j], f.pow(g.alpha[j], i as u64))))
}

/// Multipliers `v_i = (u_i · Π_{j≠i} (α_i − α_j))^(-1)` of the dual code.
pub fn grs_dual_multipliers(field: &FieldSpec, alpha: &[u32], u: &[u32]) -> Result<Vec<u32>> {
    GrsSpec { field: field.clone(), k: 0, alpha: alpha.to_vec(), u: u.to_vec() }.validate()?;
    (0..alpha.len())
        .map(|i| {
            let prod =
                (0..alpha.len()).filter(|&j| j != i).fold(u[i], |acc, j| field.mul(acc, field.sub(alpha[i], alpha[j])));
            field.inv(prod)
        })
        .collect()
}

/// A validated N-sum box.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NSumBox {
    m: FMat,
}

impl NSumBox {
    /// Wraps a transfer matrix after checking shape, rank and self-orthogonality.
    pub fn new(m: FMat) -> Result<Self> {
        if !is_valid_box(&m)? {
            return Err(Error::InvalidBox("rank below N or M·J·Mᵀ ≠ 0".into()));
        }
        Ok(NSumBox { m })
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.m.field()
    }

    pub fn matrix(&self) -> &FMat {
        &self.m
    }

    pub fn left(&self) -> FMat {
        self.m.select_columns(&(1..=self.n()).collect::<Vec<_>>()).expect("in range")
    }

    pub fn right(&self) -> FMat {
        self.m.select_columns(&(self.n() + 1..=2 * self.n()).collect::<Vec<_>>()).expect("in range")
    }

    /// Output `y = M·x` for an input column (or a batch of columns) of height 2N.
    pub fn eval(&self, x: &FMat) -> Result<FMat> {
        self.m.mat_mul(x)
    }

    pub fn to_text(&self) -> String {
        format!("box {} {}\n{}", self.n(), self.field().order(), self.m.to_text())
    }

    /// Parses `box N q` followed by a matrix; returns the box and lines consumed.
    pub fn parse_lines(lines: &[&str], first_line: usize) -> Result<(Self, usize)> {
        let header = lines.first().ok_or_else(|| Error::parse(first_line, "missing box header"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (n, q) = match parts[..] {
            ["box", n, q] => (
                n.parse::<usize>().map_err(|_| Error::parse(first_line, "bad box size"))?,
                q.parse::<u32>().map_err(|_| Error::parse(first_line, "bad field order"))?,
            ),
            _ => return Err(Error::parse(first_line, "box header must be `box N q`")),
        };
        let (m, used) = FMat::parse_lines(&lines[1..], first_line + 1)?;
        if m.rows() != n || m.cols() != 2 * n || m.field().order() != q {
            return Err(Error::parse(first_line, "box header disagrees with its matrix"));
        }
        let b = NSumBox::new(m).map_err(|e| Error::parse(first_line, e.to_string()))?;
        Ok((b, used + 1))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        let (b, used) = Self::parse_lines(&lines, 1)?;
        if used != lines.len() {
            return Err(Error::parse(used + 1, "trailing content after box"));
        }
        Ok(b)
    }
}

/// `y = M·x`.
pub fn box_eval(b: &NSumBox, x: &FMat) -> Result<FMat> {
    b.eval(x)
}

fn check_shape(m: &FMat) -> Result<usize> {
    let n = m.rows();
    if n == 0 || m.cols() != 2 * n {
        return Err(Error::dims("N-sum box", format!("{}x{} is not N x 2N", m.rows(), m.cols())));
    }
    Ok(n)
}

/// `M·J·Mᵀ` with `J = [[0, −I], [I, 0]]`, computed as `R·Lᵀ − L·Rᵀ`.
pub fn symplectic_gram(m: &FMat) -> Result<FMat> {
    let n = check_shape(m)?;
    let l = m.select_columns(&(1..=n).collect::<Vec<_>>())?;
    let r = m.select_columns(&(n + 1..=2 * n).collect::<Vec<_>>())?;
    r.mat_mul(&l.transpose())?.mat_sub(&l.mat_mul(&r.transpose())?)
}

/// Full row rank and strong self-orthogonality.
pub fn is_valid_box(m: &FMat) -> Result<bool> {
    let n = check_shape(m)?;
    Ok(m.rank() == n && symplectic_gram(m)?.is_zero())
}

/// Outcome of a half-MDS check; failures carry the offending index subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfMds {
    Holds,
    Fails { subset: Vec<usize>, rank: usize, needed: usize },
}

impl HalfMds {
    pub fn holds(&self) -> bool {
        matches!(self, HalfMds::Holds)
    }
}

fn paired_rank(m: &FMat, subset: &[usize]) -> usize {
    let n = m.rows();
    let cols: Vec<usize> = subset.iter().copied().chain(subset.iter().map(|&i| i + n)).collect();
    m.select_columns(&cols).expect("indices in range").rank()
}

fn subset_of_mask(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn check_subset(m: &FMat, subset: Vec<usize>) -> HalfMds {
    let needed = (2 * subset.len()).min(m.rows());
    let rank = paired_rank(m, &subset);
    if rank == needed {
        HalfMds::Holds
    } else {
        HalfMds::Fails { subset, rank, needed }
    }
}

/// Exhaustive half-MDS check over all nonempty subsets, visited in colex
/// order (increasing bitmask). Refuses N above the exhaustive guard.
pub fn is_half_mds(m: &FMat) -> Result<HalfMds> {
    let n = check_shape(m)?;
    if n > MAX_EXHAUSTIVE_HALF_MDS_N {
        return Err(Error::guard("half-MDS exhaustive N", n as u128, MAX_EXHAUSTIVE_HALF_MDS_N as u128));
    }
    for mask in 1..(1u64 << n) {
        let r = check_subset(m, subset_of_mask(mask, n));
        if !r.holds() {
            return Ok(r);
        }
    }
    Ok(HalfMds::Holds)
}

/// Every failing subset, in colex order.
pub fn half_mds_failures(m: &FMat) -> Result<Vec<Vec<usize>>> {
    let n = check_shape(m)?;
    if n > MAX_EXHAUSTIVE_HALF_MDS_N {
        return Err(Error::guard("half-MDS exhaustive N", n as u128, MAX_EXHAUSTIVE_HALF_MDS_N as u128));
    }
    Ok((1..(1u64 << n))
        .map(|mask| subset_of_mask(mask, n))
        .filter(|s| paired_rank(m, s) != (2 * s.len()).min(n))
        .collect())
}

/// Half-MDS check on `samples` random nonempty subsets; for boxes too large to
/// enumerate. A `Holds` result is evidence, not a proof.
pub fn is_half_mds_sampled(m: &FMat, samples: usize, seed: u64) -> Result<HalfMds> {
    let n = check_shape(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let size = rng.gen_range(1..=n);
        let mut subset = rand::seq::index::sample(&mut rng, n, size).into_vec();
        subset.sort_unstable();
        let r = check_subset(m, subset.into_iter().map(|i| i + 1).collect());
        if !r.holds() {
            return Ok(r);
        }
    }
    Ok(HalfMds::Holds)
}

/// `[[GRS_{⌈N/2⌉,N}(α,1), 0], [0, GRS_{⌊N/2⌋,N}(α,v)]]` with α the first N field
/// elements and v the dual multipliers. Requires q ≥ N.
pub fn build_half_mds_box(n: usize, field: &FieldSpec) -> Result<NSumBox> {
    if n == 0 {
        return Err(Error::InvalidArgument("box size must be positive".into()));
    }
    if (field.order() as usize) < n {
        return Err(Error::FieldTooSmall { q: field.order(), n });
    }
    let alpha: Vec<u32> = (0..n as u32).collect();
    let u = vec![1; n];
    let v = grs_dual_multipliers(field, &alpha, &u)?;
    let top = grs_matrix(&GrsSpec { field: field.clone(), k: n.div_ceil(2), alpha: alpha.clone(), u })?;
    let bottom = grs_matrix(&GrsSpec { field: field.clone(), k: n / 2, alpha, u: v })?;
    let mut m = FMat::zeros(field, n, 2 * n);
    for i in 0..top.rows() {
        for j in 0..n {
            m.put(i, j, top.at(i, j));
        }
    }
    for i in 0..bottom.rows() {
        for j in 0..n {
            m.put(top.rows() + i, n + j, bottom.at(i, j));
        }
    }
    NSumBox::new(m)
}
