//! Column-major sparse storage and the implicit centered design.
//!
//! Every screening test walks features one at a time, so the only access
//! pattern that has to be fast is "give me column k".

use crate::error::{Error, Result};

/// Borrowed view of one stored column: parallel arrays of row indices and values.
#[derive(Debug, Clone, Copy)]
pub struct ColumnView<'a> {
    pub rows: &'a [usize],
    pub values: &'a [f64],
}

impl<'a> ColumnView<'a> {
    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + 'a {
        self.rows.iter().copied().zip(self.values.iter().copied())
    }

    pub fn dot(&self, v: &[f64]) -> f64 {
        self.iter().map(|(i, x)| x * v[i]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Dense copy of the column, length `n_rows`.
    pub fn to_dense(&self, n_rows: usize) -> Vec<f64> {
        let mut out = vec![0.0; n_rows];
        for (i, x) in self.iter() {
            out[i] = x;
        }
        out
    }
}

/// Compressed sparse column matrix.
///
/// Invariants: row indices strictly increase within each column and are
/// `< n_rows`; no stored value is zero or non-finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseColMatrix {
    n_rows: usize,
    n_cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseColMatrix {
    /// Builds from raw CSC arrays, validating every invariant.
    pub fn from_csc(
        n_rows: usize,
        n_cols: usize,
        col_ptr: Vec<usize>,
        row_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if col_ptr.len() != n_cols + 1 {
            return Err(Error::Dimension(format!(
                "col_ptr has length {}, expected {}",
                col_ptr.len(),
                n_cols + 1
            )));
        }
        if row_idx.len() != values.len() || col_ptr[n_cols] != values.len() || col_ptr[0] != 0 {
            return Err(Error::Dimension("inconsistent CSC array lengths".into()));
        }
        for k in 0..n_cols {
            let (lo, hi) = (col_ptr[k], col_ptr[k + 1]);
            if lo > hi {
                return Err(Error::InvalidData(format!("col_ptr decreases at column {k}")));
            }
            let rows = &row_idx[lo..hi];
            if rows.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidData(format!(
                    "row indices not strictly increasing in column {k}"
                )));
            }
            if rows.last().is_some_and(|&r| r >= n_rows) {
                return Err(Error::IndexOutOfRange {
                    index: *rows.last().unwrap(),
                    len: n_rows,
                });
            }
        }
        if let Some(v) = values.iter().find(|v| **v == 0.0 || !v.is_finite()) {
            return Err(Error::InvalidData(format!("stored value {v} is zero or non-finite")));
        }
        Ok(Self {
            n_rows,
            n_cols,
            col_ptr,
            row_idx,
            values,
        })
    }

    /// Builds from `(row, col, value)` triplets in any order. Duplicate
    /// positions are summed, then exact zeros are dropped.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries: Vec<(usize, usize, f64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= n_rows {
                return Err(Error::IndexOutOfRange { index: r, len: n_rows });
            }
            if c >= n_cols {
                return Err(Error::IndexOutOfRange { index: c, len: n_cols });
            }
            if !v.is_finite() {
                return Err(Error::InvalidData(format!("non-finite value at ({r}, {c})")));
            }
            entries.push((c, r, v));
        }
        entries.sort_by_key(|&(c, r, _)| (c, r));

        // counting pass then fill
        let mut col_ptr = vec![0usize; n_cols + 1];
        let mut row_idx = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut it = entries.into_iter().peekable();
        while let Some((c, r, mut v)) = it.next() {
            while let Some(&(c2, r2, v2)) = it.peek() {
                if c2 == c && r2 == r {
                    v += v2;
                    it.next();
                } else {
                    break;
                }
            }
            if v != 0.0 {
                row_idx.push(r);
                values.push(v);
                col_ptr[c + 1] += 1;
            }
        }
        for k in 0..n_cols {
            col_ptr[k + 1] += col_ptr[k];
        }
        Ok(Self {
            n_rows,
            n_cols,
            col_ptr,
            row_idx,
            values,
        })
    }

    /// Builds from dense rows (`rows[i][k]` is row i, column k).
    pub fn from_dense_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged dense rows".into()));
        }
        Self::from_triplets(
            n_rows,
            n_cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(k, &v)| (i, k, v))),
        )
    }

    /// Builds from dense columns (`cols[k]` has length `n_rows`).
    pub fn from_dense_cols(n_rows: usize, cols: &[Vec<f64>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != n_rows) {
            return Err(Error::Dimension("column length differs from n_rows".into()));
        }
        Self::from_triplets(
            n_rows,
            cols.len(),
            cols.iter()
                .enumerate()
                .flat_map(|(k, c)| c.iter().enumerate().map(move |(i, &v)| (i, k, v))),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn row_indices(&self) -> &[usize] {
        &self.row_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column `k`. Panics if `k >= n_cols`.
    pub fn col(&self, k: usize) -> ColumnView<'_> {
        let (lo, hi) = (self.col_ptr[k], self.col_ptr[k + 1]);
        ColumnView {
            rows: &self.row_idx[lo..hi],
            values: &self.values[lo..hi],
        }
    }

    /// `X w`.
    pub fn mat_vec(&self, w: &[f64]) -> Result<Vec<f64>> {
        if w.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "vector length {} != n_cols {}",
                w.len(),
                self.n_cols
            )));
        }
        let mut out = vec![0.0; self.n_rows];
        for (k, &wk) in w.iter().enumerate() {
            if wk != 0.0 {
                self.col_axpy(k, wk, &mut out);
            }
        }
        Ok(out)
    }

    /// `x_k^T v`, touching only stored entries.
    pub fn col_dot(&self, k: usize, v: &[f64]) -> Result<f64> {
        if k >= self.n_cols {
            return Err(Error::IndexOutOfRange { index: k, len: self.n_cols });
        }
        if v.len() != self.n_rows {
            return Err(Error::Dimension(format!(
                "vector length {} != n_rows {}",
                v.len(),
                self.n_rows
            )));
        }
        Ok(self.col(k).dot(v))
    }

    /// `X^T v`.
    pub fn tr_mat_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n_cols).map(|k| self.col(k).dot(v)).collect()
    }

    pub fn col_norm_sq(&self, k: usize) -> f64 {
        self.col(k).norm_sq()
    }

    /// `out += a * x_k`.
    pub fn col_axpy(&self, k: usize, a: f64, out: &mut [f64]) {
        for (i, x) in self.col(k).iter() {
            out[i] += a * x;
        }
    }

    /// New matrix holding the listed columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseColMatrix {
        let mut col_ptr = Vec::with_capacity(cols.len() + 1);
        col_ptr.push(0);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        for &k in cols {
            let c = self.col(k);
            row_idx.extend_from_slice(c.rows);
            values.extend_from_slice(c.values);
            col_ptr.push(row_idx.len());
        }
        SparseColMatrix {
            n_rows: self.n_rows,
            n_cols: cols.len(),
            col_ptr,
            row_idx,
            values,
        }
    }

    /// Multiplies row `i` by `scale[i]` (used to form `y ∘ z_k` columns).
    pub fn scale_rows(&self, scale: &[f64]) -> Result<SparseColMatrix> {
        if scale.len() != self.n_rows {
            return Err(Error::Dimension("row scale length != n_rows".into()));
        }
        Self::from_triplets(
            self.n_rows,
            self.n_cols,
            (0..self.n_cols).flat_map(|k| self.col(k).iter().map(move |(i, x)| (i, k, x * scale[i]))),
        )
    }

    /// Dense row-major copy, for tests and tiny problems.
    pub fn to_dense_rows(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.n_cols]; self.n_rows];
        for k in 0..self.n_cols {
            for (i, x) in self.col(k).iter() {
                out[i][k] = x;
            }
        }
        out
    }
}

/// `X - 1 mean^T` kept implicit: the sparse matrix plus one mean per column.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredMatrix {
    inner: SparseColMatrix,
    means: Vec<f64>,
}

impl CenteredMatrix {
    pub fn new(inner: SparseColMatrix) -> Self {
        let m = inner.n_rows().max(1) as f64;
        let means = (0..inner.n_cols()).map(|k| inner.col(k).sum() / m).collect();
        Self { inner, means }
    }

    pub fn inner(&self) -> &SparseColMatrix {
        &self.inner
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Dense centered column `x_k - mean_k 1`.
    pub fn col_dense(&self, k: usize) -> Vec<f64> {
        let mut out = vec![-self.means[k]; self.inner.n_rows()];
        for (i, x) in self.inner.col(k).iter() {
            out[i] += x;
        }
        out
    }
}

/// A feature matrix as seen by the LASSO machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Design {
    Sparse(SparseColMatrix),
    Centered(CenteredMatrix),
}

impl Design {
    pub fn n_rows(&self) -> usize {
        match self {
            Design::Sparse(x) => x.n_rows(),
            Design::Centered(c) => c.inner.n_rows(),
        }
    }

    pub fn n_cols(&self) -> usize {
        match self {
            Design::Sparse(x) => x.n_cols(),
            Design::Centered(c) => c.inner.n_cols(),
        }
    }

    /// `X^T v` for every column at once (the vector sum is shared).
    pub fn tr_mat_vec(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Design::Sparse(x) => x.tr_mat_vec(v),
            Design::Centered(c) => {
                let s: f64 = v.iter().sum();
                (0..c.inner.n_cols())
                    .map(|k| c.inner.col(k).dot(v) - c.means[k] * s)
                    .collect()
            }
        }
    }

    /// `x_k^T v`. For repeated calls against the same `v` prefer [`Design::tr_mat_vec`]
    /// or pass a precomputed `sum(v)` to [`Design::col_dot_with_sum`].
    pub fn col_dot(&self, k: usize, v: &[f64]) -> f64 {
        match self {
            Design::Sparse(x) => x.col(k).dot(v),
            Design::Centered(_) => self.col_dot_with_sum(k, v, v.iter().sum()),
        }
    }

    pub fn col_dot_with_sum(&self, k: usize, v: &[f64], v_sum: f64) -> f64 {
        match self {
            Design::Sparse(x) => x.col(k).dot(v),
            Design::Centered(c) => c.inner.col(k).dot(v) - c.means[k] * v_sum,
        }
    }

    pub fn col_norm_sq(&self, k: usize) -> f64 {
        match self {
            Design::Sparse(x) => x.col_norm_sq(k),
            Design::Centered(c) => {
                let col = c.inner.col(k);
                let mu = c.means[k];
                let stored: f64 = col.values.iter().map(|x| (x - mu) * (x - mu)).sum();
                stored + (c.inner.n_rows() - col.nnz()) as f64 * mu * mu
            }
        }
    }

    /// `out += a * x_k`.
    pub fn col_axpy(&self, k: usize, a: f64, out: &mut [f64]) {
        match self {
            Design::Sparse(x) => x.col_axpy(k, a, out),
            Design::Centered(c) => {
                c.inner.col_axpy(k, a, out);
                let shift = a * c.means[k];
                out.iter_mut().for_each(|o| *o -= shift);
            }
        }
    }

    pub fn mat_vec(&self, w: &[f64]) -> Result<Vec<f64>> {
        if w.len() != self.n_cols() {
            return Err(Error::Dimension(format!(
                "vector length {} != n_cols {}",
                w.len(),
                self.n_cols()
            )));
        }
        match self {
            Design::Sparse(x) => x.mat_vec(w),
            Design::Centered(c) => {
                let mut out = c.inner.mat_vec(w)?;
                let shift: f64 = c.means.iter().zip(w).map(|(m, w)| m * w).sum();
                out.iter_mut().for_each(|o| *o -= shift);
                Ok(out)
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Design {
        match self {
            Design::Sparse(x) => Design::Sparse(x.select_columns(cols)),
            Design::Centered(c) => Design::Centered(CenteredMatrix {
                inner: c.inner.select_columns(cols),
                means: cols.iter().map(|&k| c.means[k]).collect(),
            }),
        }
    }

    /// Dense copy of column `k` including any implicit centering.
    pub fn col_dense(&self, k: usize) -> Vec<f64> {
        match self {
            Design::Sparse(x) => x.col(k).to_dense(x.n_rows()),
            Design::Centered(c) => c.col_dense(k),
        }
    }
}

impl From<SparseColMatrix> for Design {
    fn from(x: SparseColMatrix) -> Self {
        Design::Sparse(x)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn norm1(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two_identity() -> SparseColMatrix {
        SparseColMatrix::from_dense_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn identity_mat_vec() {
        let x = two_by_two_identity();
        assert_eq!(x.mat_vec(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
        assert_eq!(x.mat_vec(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn single_column_mat_vec() {
        let x = SparseColMatrix::from_dense_cols(2, &[vec![1.0, 2.0]]).unwrap();
        assert_eq!(x.mat_vec(&[2.0]).unwrap(), vec![2.0, 4.0]);
    }

    #[test]
    fn mat_vec_dimension_mismatch() {
        let x = two_by_two_identity();
        assert!(matches!(x.mat_vec(&[1.0]), Err(Error::Dimension(_))));
    }

    #[test]
    fn col_dot_examples() {
        let x = SparseColMatrix::from_triplets(2, 2, [(0, 0, 1.0)]).unwrap();
        assert_eq!(x.col_dot(0, &[5.0, 7.0]).unwrap(), 5.0);
        assert_eq!(x.col_dot(1, &[5.0, 7.0]).unwrap(), 0.0);
        let x = SparseColMatrix::from_triplets(3, 1, [(0, 0, 2.0), (2, 0, -1.0)]).unwrap();
        assert_eq!(x.col_dot(0, &[1.0, 9.0, 3.0]).unwrap(), -1.0);
        assert!(matches!(
            x.col_dot(1, &[1.0, 9.0, 3.0]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn triplets_sum_duplicates_and_drop_zeros() {
        let x = SparseColMatrix::from_triplets(
            3,
            2,
            [(2, 0, 1.0), (0, 0, 1.5), (2, 0, 2.0), (1, 1, 4.0), (1, 1, -4.0)],
        )
        .unwrap();
        assert_eq!(x.col(0).rows, &[0, 2]);
        assert_eq!(x.col(0).values, &[1.5, 3.0]);
        assert_eq!(x.col(1).nnz(), 0);
    }

    #[test]
    fn from_csc_rejects_bad_input() {
        assert!(SparseColMatrix::from_csc(2, 1, vec![0, 2], vec![1, 0], vec![1.0, 1.0]).is_err());
        assert!(SparseColMatrix::from_csc(2, 1, vec![0, 1], vec![0], vec![0.0]).is_err());
        assert!(SparseColMatrix::from_csc(2, 1, vec![0, 1], vec![2], vec![1.0]).is_err());
        assert!(SparseColMatrix::from_csc(2, 1, vec![0, 1], vec![1], vec![1.0]).is_ok());
    }

    #[test]
    fn centered_design_ops() {
        let x = SparseColMatrix::from_dense_cols(2, &[vec![2.0, 4.0], vec![5.0, 5.0]]).unwrap();
        let d = Design::Centered(CenteredMatrix::new(x));
        assert_eq!(d.col_dense(0), vec![-1.0, 1.0]);
        assert_eq!(d.col_dense(1), vec![0.0, 0.0]);
        assert_eq!(d.col_norm_sq(1), 0.0);
        assert_eq!(d.col_norm_sq(0), 2.0);
        assert_eq!(d.tr_mat_vec(&[1.0, 3.0]), vec![2.0, 0.0]);
        assert_eq!(d.mat_vec(&[1.0, 7.0]).unwrap(), vec![-1.0, 1.0]);
        let mut out = vec![0.0, 0.0];
        d.col_axpy(0, 2.0, &mut out);
        assert_eq!(out, vec![-2.0, 2.0]);
    }
}
