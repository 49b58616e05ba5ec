//! Minimal dense linear algebra: exactly what the embedding solver needs.
//!
//! Matrices are row-major `f64`. The eigensolver is a cyclic Jacobi sweep,
//! least squares goes through the normal equations with an eigenvalue
//! cutoff (minimum-norm solutions for rank-deficient systems), and the
//! iterative path is restarted GMRES over a caller-supplied operator.
//! Everything here targets desk-scale problems, a few thousand rows at most.

mod gmres;
mod jacobi;

pub use gmres::{iterative_solve, IterativeSolution};
pub(crate) use gmres::gmres;

use crate::error::{Error, Result};
use crate::par;

/// Dense row-major matrix.
///
/// This is a plumbing type: constructors do not police entry values, so
/// infinities are representable (unreachable graph distances use them).
/// Validated wrappers such as embeddings enforce finiteness at their own
/// boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "DenseMatrix::from_vec",
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "DenseMatrix::from_rows",
                    expected: c,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { rows: r, cols: c, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `self * other`, parallel over output rows.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "DenseMatrix::matmul",
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        let oc = other.cols;
        par::for_each_chunk_mut(&mut out.data, oc, |i, out_row| {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, b) in out_row.iter_mut().zip(brow) {
                    *o += aik * b;
                }
            }
        });
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "DenseMatrix::mat_vec",
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest |A[i][j] - A[j][i]| over the square part.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.rows.min(self.cols);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Eigen-decomposition of a symmetric matrix, largest `k` pairs.
///
/// Returns eigenvalues in descending order and the matching eigenvectors as
/// the columns of an `n x k` matrix. Each eigenvector is normalized and its
/// sign is fixed so that the entry of largest magnitude (first such index on
/// ties) is positive, which keeps downstream initializations reproducible.
///
/// Symmetry is required up to `1e-8` relative to the largest entry.
pub fn top_eigenpairs(a: &DenseMatrix, k: usize) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "top_eigenpairs",
            expected: n,
            actual: a.cols(),
        });
    }
    if k > n {
        return Err(Error::invalid(format!(
            "requested {k} eigenpairs from a {n} x {n} matrix"
        )));
    }
    let asym = a.max_asymmetry();
    if asym > 1e-8 * a.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { max_asymmetry: asym });
    }
    let (evals, evecs) = jacobi::jacobi_eigen(a)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| evals[j].total_cmp(&evals[i]).then(i.cmp(&j)));

    let mut top_vals = Vec::with_capacity(k);
    let mut top_vecs = DenseMatrix::zeros(n, k);
    for (col, &idx) in order.iter().take(k).enumerate() {
        top_vals.push(evals[idx]);
        let mut v: Vec<f64> = (0..n).map(|r| evecs.get(r, idx)).collect();
        fix_sign(&mut v);
        for (r, val) in v.iter().enumerate() {
            top_vecs.set(r, col, *val);
        }
    }
    Ok((top_vals, top_vecs))
}

fn fix_sign(v: &mut [f64]) {
    let mut lead = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[lead].abs() {
            lead = i;
        }
    }
    if v[lead] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Moore-Penrose pseudo-inverse of a symmetric matrix.
///
/// Eigenvalues with `|lambda| <= rel_cutoff * max |lambda|` are treated as
/// zero. The embedding solver relies on this for the weight Laplacian, whose
/// nullspace (constant vectors per connected component) must be annihilated
/// rather than inverted.
pub fn sym_pseudo_inverse(a: &DenseMatrix, rel_cutoff: f64) -> Result<DenseMatrix> {
    let n = a.rows();
    let (evals, evecs) = top_eigenpairs(a, n)?;
    let lmax = evals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut pinv = DenseMatrix::zeros(n, n);
    if lmax == 0.0 {
        return Ok(pinv);
    }
    for (idx, &lambda) in evals.iter().enumerate() {
        if lambda.abs() <= rel_cutoff * lmax {
            continue;
        }
        let inv = 1.0 / lambda;
        for i in 0..n {
            let ui = evecs.get(i, idx);
            if ui == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = pinv.get(i, j) + inv * ui * evecs.get(j, idx);
                pinv.set(i, j, v);
            }
        }
    }
    Ok(pinv)
}

/// Minimum-norm least-squares solution of `A x = b`.
#[derive(Debug, Clone)]
pub struct LeastSquaresSolution {
    pub x: Vec<f64>,
    /// `||A x - b||_2` recomputed from the returned `x`.
    pub residual: f64,
}

/// Solves `min ||A x - b||_2`, returning the solution of minimum Euclidean
/// norm when `A` is rank deficient.
///
/// Goes through the normal equations with a relative eigenvalue cutoff of
/// `1e-12`, which caps the usable condition number (in singular values) near
/// `1e6`; ample for the well- or structurally-rank-deficient systems that
/// arise here.
pub fn solve_least_squares(a: &DenseMatrix, b: &[f64]) -> Result<LeastSquaresSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_least_squares",
            expected: a.rows(),
            actual: b.len(),
        });
    }
    let at = a.transpose();
    let ata = at.matmul(a)?;
    let atb = at.mat_vec(b)?;
    let n = ata.rows();
    let (evals, evecs) = top_eigenpairs(&ata, n)?;
    let lmax = evals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut x = vec![0.0; n];
    if lmax > 0.0 {
        for (idx, &lambda) in evals.iter().enumerate() {
            if lambda <= 1e-12 * lmax {
                continue;
            }
            let col: Vec<f64> = (0..n).map(|r| evecs.get(r, idx)).collect();
            let coeff = dot(&col, &atb) / lambda;
            for (xi, ci) in x.iter_mut().zip(&col) {
                *xi += coeff * ci;
            }
        }
    }
    let ax = a.mat_vec(&x)?;
    let residual = norm2(&ax.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>());
    if !residual.is_finite() || x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("solve_least_squares"));
    }
    Ok(LeastSquaresSolution { x, residual })
}

/// Kronecker product `a (x) b`.
pub fn kronecker(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij == 0.0 {
                continue;
            }
            for p in 0..b.rows() {
                for q in 0..b.cols() {
                    out.set(i * b.rows() + p, j * b.cols() + q, aij * b.get(p, q));
                }
            }
        }
    }
    out
}

/// Column-stacking vectorization, `vec(X)`.
pub fn vec_columns(x: &DenseMatrix) -> Vec<f64> {
    let mut v = Vec::with_capacity(x.rows() * x.cols());
    for j in 0..x.cols() {
        for i in 0..x.rows() {
            v.push(x.get(i, j));
        }
    }
    v
}

/// Inverse of [`vec_columns`].
pub fn unvec_columns(v: &[f64], rows: usize, cols: usize) -> Result<DenseMatrix> {
    if v.len() != rows * cols {
        return Err(Error::DimensionMismatch {
            context: "unvec_columns",
            expected: rows * cols,
            actual: v.len(),
        });
    }
    let mut x = DenseMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            x.set(i, j, v[j * rows + i]);
        }
    }
    Ok(x)
}
