//! Exact sparse linear algebra: rank, kernel, image and span membership.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse vector keyed by coordinate index. Zero entries are never stored.
pub type SparseVec<S> = BTreeMap<usize, S>;

/// Matrices whose fill exceeds this fraction are eliminated densely.
const DENSE_THRESHOLD: f64 = 0.3;

/// Row-major sparse matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec<S>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                if i >= rows {
                    return Err(Error::DimensionMismatch(format!(
                        "column {j} has an entry in row {i} of {rows}"
                    )));
                }
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i].get(&j).cloned().unwrap_or_else(S::zero)
    }

    pub fn row(&self, i: usize) -> &SparseVec<S> {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> SparseVec<S> {
        let mut out = BTreeMap::new();
        for (i, row) in self.data.iter().enumerate() {
            if let Some(v) = row.get(&j) {
                out.insert(i, v.clone());
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn density(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            0.0
        } else {
            self.nnz() as f64 / (self.rows * self.cols) as f64
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = BTreeMap::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = S::zero();
            for (j, a) in row {
                if let Some(b) = v.get(j) {
                    acc = acc + a.clone() * b.clone();
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: SparseVec<S> = BTreeMap::new();
            for (k, a) in row {
                axpy(&mut acc, a, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        Ok(out)
    }
}

/// `y += a * x`, dropping cancelled entries.
pub fn axpy<S: Scalar>(y: &mut SparseVec<S>, a: &S, x: &SparseVec<S>) {
    if a.is_zero() {
        return;
    }
    for (&j, v) in x {
        let prod = a.clone() * v.clone();
        match y.get_mut(&j) {
            Some(e) => {
                *e = e.clone() + prod;
                if e.is_zero() {
                    y.remove(&j);
                }
            }
            None => {
                y.insert(j, prod);
            }
        }
    }
}

/// Result of eliminating a matrix.
#[derive(Clone, Debug)]
pub struct Reduction<S> {
    pub rank: usize,
    /// `(row, column)` of every pivot, ordered by column. Rows are indices
    /// into the input matrix.
    pub pivots: Vec<(usize, usize)>,
    /// Basis of the null space, one vector per free column in increasing
    /// order. Each vector has a 1 at its free column and 0 at the others.
    pub kernel: Vec<SparseVec<S>>,
    /// The input columns at the pivot positions.
    pub image: Vec<SparseVec<S>>,
}

/// Eliminates `m`, choosing at each step the leftmost column with a nonzero
/// entry and, inside it, the smallest original row index.
pub fn reduce<S: Scalar>(m: &SparseMatrix<S>) -> Reduction<S> {
    let echelon = if m.density() > DENSE_THRESHOLD {
        eliminate_dense(m)
    } else {
        eliminate_sparse(m)
    };
    finish(m, echelon)
}

/// Echelon rows with their original row index and pivot column.
struct Echelon<S> {
    rows: Vec<(usize, usize, SparseVec<S>)>,
}

fn eliminate_sparse<S: Scalar>(m: &SparseMatrix<S>) -> Echelon<S> {
    let mut work: Vec<SparseVec<S>> = m.data.clone();
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, r) in work.iter().enumerate() {
        if let Some((&lead, _)) = r.iter().next() {
            queue.insert((lead, i));
        }
    }
    let mut out = Vec::new();
    while let Some(&(col, prow)) = queue.iter().next() {
        queue.remove(&(col, prow));
        let pivot_row = std::mem::take(&mut work[prow]);
        let p = pivot_row[&col].clone();
        let same: Vec<(usize, usize)> = queue.range((col, 0)..(col + 1, 0)).copied().collect();
        for key in same {
            queue.remove(&key);
            let r = key.1;
            let factor = -(work[r][&col].clone() / p.clone());
            axpy(&mut work[r], &factor, &pivot_row);
            work[r].remove(&col);
            if let Some((&lead, _)) = work[r].iter().next() {
                queue.insert((lead, r));
            }
        }
        out.push((prow, col, pivot_row));
    }
    Echelon { rows: out }
}

/// Fraction-free (Bareiss) elimination on a dense copy.
fn eliminate_dense<S: Scalar>(m: &SparseMatrix<S>) -> Echelon<S> {
    let mut a = m.to_dense();
    let mut remaining: Vec<usize> = (0..m.rows).collect();
    let mut prev = S::one();
    let mut out = Vec::new();
    for col in 0..m.cols {
        let Some(pos) = remaining.iter().position(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        let prow = remaining.remove(pos);
        let p = a[prow][col].clone();
        for &r in &remaining {
            let f = a[r][col].clone();
            for j in col + 1..m.cols {
                let v = (p.clone() * a[r][j].clone() - f.clone() * a[prow][j].clone()) / prev.clone();
                a[r][j] = v;
            }
            a[r][col] = S::zero();
        }
        prev = p;
        let row: SparseVec<S> = (col..m.cols)
            .filter(|&j| !a[prow][j].is_zero())
            .map(|j| (j, a[prow][j].clone()))
            .collect();
        out.push((prow, col, row));
    }
    Echelon { rows: out }
}

fn finish<S: Scalar>(m: &SparseMatrix<S>, echelon: Echelon<S>) -> Reduction<S> {
    let mut rows = echelon.rows;
    rows.sort_by_key(|r| r.1);
    let pivots: Vec<(usize, usize)> = rows.iter().map(|r| (r.0, r.1)).collect();
    let pivot_cols: Vec<usize> = rows.iter().map(|r| r.1).collect();

    // Reduced row echelon form: unit pivots, zeros above every pivot.
    let mut rref: Vec<SparseVec<S>> = rows
        .into_iter()
        .map(|(_, c, mut r)| {
            let inv = r[&c].inv();
            for v in r.values_mut() {
                *v = v.clone() * inv.clone();
            }
            r
        })
        .collect();
    for k in (0..rref.len()).rev() {
        let c = pivot_cols[k];
        let pivot = rref[k].clone();
        for i in 0..k {
            if let Some(f) = rref[i].get(&c).cloned() {
                axpy(&mut rref[i], &(-f), &pivot);
                rref[i].remove(&c);
            }
        }
    }

    let is_pivot: BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let mut kernel: BTreeMap<usize, SparseVec<S>> = (0..m.cols)
        .filter(|c| !is_pivot.contains(c))
        .map(|f| (f, BTreeMap::from([(f, S::one())])))
        .collect();
    for (k, row) in rref.iter().enumerate() {
        for (j, v) in row {
            if let Some(vec) = kernel.get_mut(j) {
                vec.insert(pivot_cols[k], -v.clone());
            }
        }
    }
    let image = pivot_cols.iter().map(|&c| m.column(c)).collect();
    Reduction { rank: pivots.len(), pivots, kernel: kernel.into_values().collect(), image }
}

pub fn rank<S: Scalar>(m: &SparseMatrix<S>) -> usize {
    reduce(m).rank
}

pub fn kernel<S: Scalar>(m: &SparseMatrix<S>) -> Vec<SparseVec<S>> {
    reduce(m).kernel
}

pub fn image<S: Scalar>(m: &SparseMatrix<S>) -> Vec<SparseVec<S>> {
    reduce(m).image
}

/// Whether `v` lies in the span of `vectors`, all of length `dim`.
pub fn membership<S: Scalar>(dim: usize, vectors: &[SparseVec<S>], v: &SparseVec<S>) -> Result<bool> {
    Ok(solve(dim, vectors, v)?.is_some())
}

/// Coefficients `c` with `Σ c_i vectors[i] = v`, if any exist. Free
/// directions get coefficient zero, so the answer is deterministic.
pub fn solve<S: Scalar>(
    dim: usize,
    vectors: &[SparseVec<S>],
    v: &SparseVec<S>,
) -> Result<Option<Vec<S>>> {
    let mut solver = SpanSolver::new(dim);
    for u in vectors {
        solver.push(u)?;
    }
    solver.solve(v)
}

/// Incrementally built echelon basis that remembers how each basis row is
/// assembled from the inputs, for repeated membership queries.
#[derive(Clone, Debug)]
pub struct SpanSolver<S> {
    dim: usize,
    inputs: usize,
    rows: Vec<(usize, SparseVec<S>, SparseVec<S>)>,
}

impl<S: Scalar> SpanSolver<S> {
    pub fn new(dim: usize) -> Self {
        SpanSolver { dim, inputs: 0, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors pushed so far, dependent ones included.
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    fn check(&self, v: &SparseVec<S>) -> Result<()> {
        match v.keys().next_back() {
            Some(&k) if k >= self.dim => Err(Error::DimensionMismatch(format!(
                "vector has coordinate {k} in a space of dimension {}",
                self.dim
            ))),
            _ => Ok(()),
        }
    }

    /// Reduces `v` against the basis. Returns the residual and the input
    /// coefficients `c` with `v = residual + Σ c_i input_i`.
    pub fn reduce(&self, v: &SparseVec<S>) -> Result<(SparseVec<S>, SparseVec<S>)> {
        self.check(v)?;
        let mut r = v.clone();
        let mut coeffs = BTreeMap::new();
        for (p, row, combo) in &self.rows {
            if let Some(a) = r.get(p).cloned() {
                axpy(&mut r, &(-a.clone()), row);
                r.remove(p);
                axpy(&mut coeffs, &a, combo);
            }
        }
        Ok((r, coeffs))
    }

    /// Adds `v` to the spanning set. Returns whether it enlarged the span.
    pub fn push(&mut self, v: &SparseVec<S>) -> Result<bool> {
        let (mut r, coeffs) = self.reduce(v)?;
        let idx = self.inputs;
        self.inputs += 1;
        let Some((&p, lead)) = r.iter().next() else {
            return Ok(false);
        };
        let inv = lead.inv();
        for x in r.values_mut() {
            *x = x.clone() * inv.clone();
        }
        // row = (v - Σ coeffs_i input_i) / lead
        let mut combo: SparseVec<S> = coeffs.into_iter().map(|(i, c)| (i, -c * inv.clone())).collect();
        combo.insert(idx, inv);
        self.rows.push((p, r, combo));
        Ok(true)
    }

    pub fn contains(&self, v: &SparseVec<S>) -> Result<bool> {
        Ok(self.reduce(v)?.0.is_empty())
    }

    /// Dense coefficient vector over all inputs, or `None` if `v` is outside
    /// the span.
    pub fn solve(&self, v: &SparseVec<S>) -> Result<Option<Vec<S>>> {
        let (r, coeffs) = self.reduce(v)?;
        if !r.is_empty() {
            return Ok(None);
        }
        let mut out = vec![S::zero(); self.inputs];
        for (i, c) in coeffs {
            out[i] = c;
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn q(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix<Rational64> {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let red = reduce(&m);
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivots, vec![(0, 0)]);
        assert_eq!(red.kernel.len(), 2);
        for k in &red.kernel {
            assert!(m.mul_vec(k).is_empty());
        }
        assert_eq!(red.kernel[0], BTreeMap::from([(0, q(-2)), (1, q(1))]));
    }

    #[test]
    fn pivot_prefers_smallest_row() {
        let m = mat(&[&[0, 1], &[3, 0], &[1, 1]]);
        let red = reduce(&m);
        assert_eq!(red.pivots, vec![(1, 0), (0, 1)]);
    }

    #[test]
    fn dense_and_sparse_agree() {
        let m = mat(&[&[2, 1, 0, 4], &[1, 1, 1, 1], &[3, 2, 1, 5], &[0, 0, 0, 1]]);
        let a = finish(&m, eliminate_dense(&m));
        let b = finish(&m, eliminate_sparse(&m));
        assert_eq!(a.rank, b.rank);
        assert_eq!(a.pivots.iter().map(|p| p.1).collect::<Vec<_>>(), b.pivots.iter().map(|p| p.1).collect::<Vec<_>>());
        assert_eq!(a.kernel, b.kernel);
    }

    #[test]
    fn solver_reports_coefficients() {
        let vs = vec![
            BTreeMap::from([(0, q(1)), (1, q(1))]),
            BTreeMap::from([(1, q(1)), (2, q(1))]),
            BTreeMap::from([(0, q(1)), (2, q(-1))]),
        ];
        let target = BTreeMap::from([(0, q(2)), (1, q(3)), (2, q(1))]);
        let c = solve(3, &vs, &target).unwrap().unwrap();
        let mut acc = BTreeMap::new();
        for (i, v) in vs.iter().enumerate() {
            axpy(&mut acc, &c[i], v);
        }
        assert_eq!(acc, target);
        assert!(!membership(3, &vs, &BTreeMap::from([(0, q(1))])).unwrap());
    }

    #[test]
    fn wrong_length_is_rejected() {
        let vs = vec![BTreeMap::from([(5, q(1))])];
        assert!(matches!(solve(3, &vs, &BTreeMap::new()), Err(Error::DimensionMismatch(_))));
    }
}
