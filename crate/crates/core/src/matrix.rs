//! Dense matrices over a finite field.
//!
//! Public row and column indices are 1-based so that column lists read the
//! same way as in hand-written schemes (`[1, 6, 2, 7]`). Elimination always
//! pivots on the first nonzero entry of the current column, scanning rows top
//! down, so every result is reproducible.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{parse_field_name, FEl, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FMat {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FMat { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from encoded field elements given row by row.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(
                    "from_rows",
                    format!("row {} has {} entries, expected {cols}", i + 1, row.len()),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&v| !field.contains(v)) {
                return Err(Error::InvalidElement(format!("{bad} is not an element of {field}")));
            }
            data.extend_from_slice(row);
        }
        Ok(FMat { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose integer entries are read in the prime subfield.
    pub fn from_ints<R: AsRef<[i64]>>(field: &FieldSpec, rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<u32>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&v| field.from_int(v)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn from_fn(field: &FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FMat { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Result<FEl> {
        self.check_index(row, col)?;
        self.field.element(self.at(row - 1, col - 1))
    }

    /// Sets the entry at 1-based `(row, col)`.
    pub fn set(&mut self, row: usize, col: usize, value: &FEl) -> Result<()> {
        self.check_index(row, col)?;
        if value.field() != &self.field {
            return Err(Error::FieldMismatch { left: value.field().name(), right: self.field.name() });
        }
        self.put(row - 1, col - 1, value.value());
        Ok(())
    }

    fn check_index(&self, row: usize, col: usize) -> Result<()> {
        if row == 0 || row > self.rows {
            return Err(Error::IndexOutOfRange { index: row, bound: self.rows });
        }
        if col == 0 || col > self.cols {
            return Err(Error::IndexOutOfRange { index: col, bound: self.cols });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn put(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == u32::from(i == j)))
    }

    fn same_field(&self, other: &FMat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.name(), right: other.field.name() });
        }
        Ok(())
    }

    pub fn transpose(&self) -> FMat {
        FMat::from_fn(&self.field, self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn mat_mul(&self, other: &FMat) -> Result<FMat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(
                "mat_mul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let f = &self.field;
        let mut out = FMat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for (o, &b) in orow.iter_mut().zip(other.row(k)) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mat_add(&self, other: &FMat) -> Result<FMat> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dims(
                "mat_add",
                format!("{}x{} plus {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(FMat { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mat_sub(&self, other: &FMat) -> Result<FMat> {
        other.scale(self.field.neg(1)).mat_add(self)
    }

    pub fn scale(&self, c: u32) -> FMat {
        let data = self.data.iter().map(|&a| self.field.mul(c, a)).collect();
        FMat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self · v` for a column vector of encoded elements.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::dims(
                "mul_vec",
                format!("{}x{} times vector of length {}", self.rows, self.cols, v.len()),
            ));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    fn check_indices(idx: &[usize], bound: usize) -> Result<()> {
        let mut seen = HashSet::new();
        for &i in idx {
            if i == 0 || i > bound {
                return Err(Error::IndexOutOfRange { index: i, bound });
            }
            if !seen.insert(i) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        Ok(())
    }

    /// Columns `idx` (1-based, in the given order).
    pub fn select_columns(&self, idx: &[usize]) -> Result<FMat> {
        Self::check_indices(idx, self.cols)?;
        Ok(FMat::from_fn(&self.field, self.rows, idx.len(), |i, j| self.at(i, idx[j] - 1)))
    }

    /// Rows `idx` (1-based, in the given order).
    pub fn select_rows(&self, idx: &[usize]) -> Result<FMat> {
        Self::check_indices(idx, self.rows)?;
        Ok(FMat::from_fn(&self.field, idx.len(), self.cols, |i, j| self.at(idx[i] - 1, j)))
    }

    pub fn hstack(parts: &[&FMat]) -> Result<FMat> {
        let first = parts.first().ok_or_else(|| Error::dims("hstack", "no blocks"))?;
        let mut cols = 0;
        for p in parts {
            first.same_field(p)?;
            if p.rows != first.rows {
                return Err(Error::dims("hstack", format!("row counts {} and {}", first.rows, p.rows)));
            }
            cols += p.cols;
        }
        let mut out = FMat::zeros(&first.field, first.rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.put(i, off + j, p.at(i, j));
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&FMat]) -> Result<FMat> {
        let t: Vec<FMat> = parts.iter().map(|p| p.transpose()).collect();
        Ok(FMat::hstack(&t.iter().collect::<Vec<_>>())?.transpose())
    }

    pub fn block_diag(parts: &[&FMat]) -> Result<FMat> {
        let first = parts.first().ok_or_else(|| Error::dims("block_diag", "no blocks"))?;
        for p in parts {
            first.same_field(p)?;
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = FMat::zeros(&first.field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.put(r0 + i, c0 + j, p.at(i, j));
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        Ok(out)
    }

    /// `row[dst] -= factor * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, factor: u32) {
        if factor == 0 {
            return;
        }
        let f = self.field.clone();
        let c = self.cols;
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&lo[src * c..src * c + c], &mut hi[..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&hi[..c], &mut lo[dst * c..dst * c + c])
        };
        let nf = f.neg(factor);
        for (x, &y) in d.iter_mut().zip(s) {
            if y != 0 {
                *x = f.add(*x, f.mul(nf, y));
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let f = self.field.clone();
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = f.mul(c, *x);
        }
    }

    /// Reduced row echelon form, applying every row operation to `companion`
    /// as well. Returns the pivot columns (0-based) and the number of swaps.
    fn rref_with(&mut self, mut companion: Option<&mut FMat>) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.at(r, col) != 0) else { continue };
            if r != prow {
                swaps += 1;
                self.swap_rows(r, prow);
                if let Some(c) = companion.as_deref_mut() {
                    c.swap_rows(r, prow);
                }
            }
            let inv = self.field.inv(self.at(prow, col)).expect("pivot is nonzero");
            self.scale_row(prow, inv);
            if let Some(c) = companion.as_deref_mut() {
                c.scale_row(prow, inv);
            }
            for i in 0..self.rows {
                if i != prow {
                    let factor = self.at(i, col);
                    self.row_axpy(i, prow, factor);
                    if let Some(c) = companion.as_deref_mut() {
                        c.row_axpy(i, prow, factor);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = if rows > cols { self.transpose() } else { self.clone() };
        m.rref_with(None).0.len().min(rows.min(cols))
    }

    /// Reduced row echelon form and its pivot columns (1-based).
    pub fn rref(&self) -> (FMat, Vec<usize>) {
        let mut m = self.clone();
        let (p, _) = m.rref_with(None);
        (m, p.into_iter().map(|c| c + 1).collect())
    }

    pub fn det(&self) -> Result<FEl> {
        if self.rows != self.cols {
            return Err(Error::dims("det", format!("{}x{} is not square", self.rows, self.cols)));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = 1;
        for col in 0..m.cols {
            let Some(r) = (col..m.rows).find(|&r| m.at(r, col) != 0) else {
                return f.element(0);
            };
            if r != col {
                m.swap_rows(r, col);
                det = f.neg(det);
            }
            let piv = m.at(col, col);
            det = f.mul(det, piv);
            let inv = f.inv(piv)?;
            for i in col + 1..m.rows {
                let factor = f.mul(m.at(i, col), inv);
                m.row_axpy(i, col, factor);
            }
        }
        f.element(det)
    }

    pub fn inverse(&self) -> Result<FMat> {
        if self.rows != self.cols {
            return Err(Error::dims("inverse", format!("{}x{} is not square", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let mut inv = FMat::identity(&self.field, self.rows);
        let (pivots, _) = m.rref_with(Some(&mut inv));
        if pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    /// A matrix `U` with `U · self = I`, from eliminating `[self | I]`.
    pub fn left_inverse(&self) -> Result<FMat> {
        let mut m = self.clone();
        let mut ops = FMat::identity(&self.field, self.rows);
        let (pivots, _) = m.rref_with(Some(&mut ops));
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient { rank: pivots.len(), needed: self.cols });
        }
        ops.select_rows(&(1..=self.cols).collect::<Vec<_>>())
    }

    /// A matrix `V` with `self · V = I`.
    pub fn right_inverse(&self) -> Result<FMat> {
        Ok(self.transpose().left_inverse()?.transpose())
    }

    /// Serializes as a `rows cols F<q>` header followed by one line per row.
    /// Prime-field entries are plain integers, others coefficient lists.
    /// Matrices without columns are written as the header alone.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.name());
        if self.cols == 0 {
            return s;
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&v| self.render_entry(v)).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    fn render_entry(&self, v: u32) -> String {
        if self.field.is_prime_field() {
            v.to_string()
        } else {
            self.field.render_coeffs(v)
        }
    }

    /// Parses the output of [`FMat::to_text`]. `first_line` is the 1-based
    /// line number of the header, used in error messages.
    pub fn parse_lines(lines: &[&str], first_line: usize) -> Result<(FMat, usize)> {
        let header = lines.first().ok_or_else(|| Error::parse(first_line, "missing matrix header"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(first_line, "matrix header must be `rows cols F<q>`"));
        }
        let rows: usize = parts[0].parse().map_err(|_| Error::parse(first_line, "bad row count"))?;
        let cols: usize = parts[1].parse().map_err(|_| Error::parse(first_line, "bad column count"))?;
        let field = parse_field_name(parts[2]).map_err(|e| Error::parse(first_line, e.to_string()))?;
        if cols == 0 {
            return Ok((FMat::zeros(&field, rows, 0), 1));
        }
        if lines.len() < rows + 1 {
            return Err(Error::parse(first_line, format!("expected {rows} matrix rows")));
        }
        let mut m = FMat::zeros(&field, rows, cols);
        for i in 0..rows {
            let line_no = first_line + 1 + i;
            let toks: Vec<&str> = lines[i + 1].split_whitespace().collect();
            if toks.len() != cols {
                return Err(Error::parse(line_no, format!("expected {cols} entries, found {}", toks.len())));
            }
            for (j, t) in toks.iter().enumerate() {
                let v = if t.starts_with('[') {
                    field.parse_coeffs(t)
                } else {
                    t.parse::<u32>()
                        .ok()
                        .filter(|&v| field.is_prime_field() && field.contains(v))
                        .ok_or_else(|| Error::InvalidElement(t.to_string()))
                }
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
                m.put(i, j, v);
            }
        }
        Ok((m, rows + 1))
    }

    pub fn from_text(s: &str) -> Result<FMat> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        let (m, used) = Self::parse_lines(&lines, 1)?;
        if used != lines.len() {
            return Err(Error::parse(used + 1, "trailing content after matrix"));
        }
        Ok(m)
    }
}

impl fmt::Debug for FMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for FMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&v| self.render_entry(v)).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
