//! Finsler stress minimization by iterated majorization.
//!
//! The objective over ordered pairs `(i, j)` is
//!
//! ```text
//! stress(X) = sum_ij w_ij (d(x_i, x_j) - D_ij)^2,
//! d(x, y)   = ||y - x||_2 + w^T (y - x)
//! ```
//!
//! with a symmetric weight matrix `w_ij`. Splitting `D` into symmetric and
//! antisymmetric parts shows the structure the solver exploits: the
//! Euclidean-norm terms see only `(D + D^T)/2` and are majorized exactly as
//! in classical SMACOF, while the drift terms are *linear* in `X` and need
//! no majorization at all. Minimizing the resulting quadratic majorizer
//! gives the update
//!
//! ```text
//! V X (I + w w^T) = B(X_k) X_k - C / 2
//! ```
//!
//! where `V` is the weight Laplacian, `B` the Guttman-transform matrix of
//! the symmetrized data, and `C` collects the drift-weighted asymmetry.
//! Each step therefore solves a linear system in the operator
//! `(I + w w^T) (x) V` without ever materializing the Kronecker product,
//! and the stress never increases. With zero drift the whole scheme
//! collapses to textbook SMACOF.

mod gradient;
mod init;
mod smacof;

pub use gradient::gradient_descent_solve;
pub use init::classical_mds_init;
pub use smacof::{run_finsler_smacof, smacof_step};

use serde::{Deserialize, Serialize};

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::geometry::RandersSpace;
use crate::linalg::{dot, DenseMatrix};
use crate::par;

/// Symmetric pair weights with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    data: DenseMatrix,
}

impl WeightMatrix {
    /// Exact symmetry is required, not symmetry up to tolerance: the
    /// majorization argument leans on `w_ij = w_ji` cancelling the mixed
    /// norm-drift terms, and a silently lopsided input would break descent.
    pub fn from_matrix(data: DenseMatrix) -> Result<Self> {
        if data.rows() != data.cols() {
            return Err(Error::DimensionMismatch {
                context: "WeightMatrix::from_matrix",
                expected: data.rows(),
                actual: data.cols(),
            });
        }
        let n = data.rows();
        for i in 0..n {
            for j in 0..n {
                let v = data.get(i, j);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::invalid(format!(
                        "weight [{i}][{j}] = {v} must be finite and >= 0"
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::invalid("weight diagonal must be zero".to_string()));
                }
                if data.get(i, j) != data.get(j, i) {
                    return Err(Error::NotSymmetric {
                        max_asymmetry: (data.get(i, j) - data.get(j, i)).abs(),
                    });
                }
            }
        }
        Ok(WeightMatrix { data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_matrix(DenseMatrix::from_rows(rows)?)
    }

    /// Unit weight on every ordered pair.
    pub fn uniform(n: usize) -> Self {
        let mut data = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    data.set(i, j, 1.0);
                }
            }
        }
        WeightMatrix { data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.data.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data.get(i, j)
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.data
    }

    pub fn total(&self) -> f64 {
        self.data.data().iter().sum()
    }
}

/// Point configuration in `R^m`, one row per point. Entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    coords: DenseMatrix,
}

impl Embedding {
    pub fn new(coords: DenseMatrix) -> Result<Self> {
        if !coords.is_finite() {
            return Err(Error::NonFinite("Embedding::new"));
        }
        if coords.cols() == 0 {
            return Err(Error::invalid("embedding dimension must be >= 1"));
        }
        Ok(Embedding { coords })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coords.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.cols()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        self.coords.row(i)
    }

    pub fn coords(&self) -> &DenseMatrix {
        &self.coords
    }

    /// Column means subtracted.
    pub fn centered(&self) -> Embedding {
        let (n, m) = (self.n(), self.dim());
        let mut means = vec![0.0; m];
        for i in 0..n {
            for (c, mean) in means.iter_mut().enumerate() {
                *mean += self.coords.get(i, c);
            }
        }
        for mean in means.iter_mut() {
            *mean /= n.max(1) as f64;
        }
        let mut out = self.coords.clone();
        for i in 0..n {
            for c in 0..m {
                out.set(i, c, out.get(i, c) - means[c]);
            }
        }
        Embedding { coords: out }
    }

    /// Largest pairwise Euclidean distance.
    pub fn diameter(&self) -> f64 {
        let n = self.n();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let d: f64 = self
                    .point(i)
                    .iter()
                    .zip(self.point(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                best = best.max(d);
            }
        }
        best.sqrt()
    }
}

/// Which linear solver the majorization step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearSolver {
    /// Direct below 500 points, iterative above.
    Auto,
    /// Pseudo-inverse of the weight Laplacian, computed once per run.
    Direct,
    /// Restarted GMRES on the structured operator, warm-started from the
    /// current iterate.
    Iterative,
}

/// How the solver produces its starting configuration.
#[derive(Debug, Clone)]
pub enum InitMode {
    /// Classical MDS on the symmetrized data, directly in the target
    /// dimension.
    ClassicalMds,
    /// Classical MDS in the hyperplane orthogonal to the drift, padded with
    /// a zero drift coordinate. With symmetric data this starts (and stays)
    /// at a configuration whose drift coordinate carries no spread.
    SymmetricPlusOne,
    /// Caller-supplied configuration.
    Given(Embedding),
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Stop once the relative per-iteration stress decrease falls below
    /// this.
    pub rel_stress_tol: f64,
    /// Denominator clamp for the Guttman-transform matrix; `None` derives
    /// `1e-9 * max D` at solve time.
    pub distance_floor: Option<f64>,
    pub linear_solver: LinearSolver,
    /// Premultiply the iterative system by the Laplacian (normal-equation
    /// form). Improves robustness on stiff weight patterns at the cost of
    /// squaring the condition number.
    pub stabilized: bool,
    /// Relative residual target for the iterative solver.
    pub linear_tol: f64,
    pub init: InitMode,
    /// Recorded for provenance; every code path is deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 500,
            rel_stress_tol: 1e-7,
            distance_floor: None,
            linear_solver: LinearSolver::Auto,
            stabilized: true,
            linear_tol: 1e-10,
            init: InitMode::ClassicalMds,
            seed: 0,
        }
    }
}

/// Per-run record: the stress trajectory and how the run ended.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    /// `stress_history[0]` is the stress of the initialization; one entry
    /// follows per accepted iteration. Non-increasing.
    pub stress_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_stress: f64,
}

pub(crate) fn check_problem(
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
) -> Result<()> {
    if w.n() != d.n() {
        return Err(Error::DimensionMismatch {
            context: "solver problem setup",
            expected: d.n(),
            actual: w.n(),
        });
    }
    let _ = space;
    for i in 0..d.n() {
        for j in 0..d.n() {
            if w.get(i, j) > 0.0 && d.get(i, j).is_infinite() {
                return Err(Error::InfiniteDissimilarity { i, j });
            }
        }
    }
    Ok(())
}

fn check_embedding(x: &Embedding, d: &DissimilarityMatrix, space: &RandersSpace) -> Result<()> {
    if x.n() != d.n() {
        return Err(Error::DimensionMismatch {
            context: "embedding size",
            expected: d.n(),
            actual: x.n(),
        });
    }
    if x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            context: "embedding dimension",
            expected: space.dim(),
            actual: x.dim(),
        });
    }
    Ok(())
}

/// Finsler stress over ordered pairs.
pub fn finsler_stress(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
) -> Result<f64> {
    check_problem(d, w, space)?;
    check_embedding(x, d, space)?;
    Ok(stress_unchecked(x, d, w, space))
}

pub(crate) fn stress_unchecked(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
) -> f64 {
    let n = x.n();
    let rows = par::map_indexed(n, |i| {
        let xi = x.point(i);
        let mut acc = 0.0;
        for j in 0..n {
            let wij = w.get(i, j);
            if wij == 0.0 {
                continue;
            }
            let dij = space.distance_unchecked(xi, x.point(j));
            let r = dij - d.get(i, j);
            acc += wij * r * r;
        }
        acc
    });
    rows.iter().sum()
}

/// Weight Laplacian: `V[i][j] = -w_ij` off the diagonal, row sums zero.
/// Positive semidefinite with the constant vector in its nullspace.
pub fn compute_v(w: &WeightMatrix) -> DenseMatrix {
    let n = w.n();
    let mut v = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let wij = w.get(i, j);
            v.set(i, j, -wij);
            diag += wij;
        }
        v.set(i, i, diag);
    }
    v
}

/// Guttman-transform matrix with metric denominators:
/// `B[i][j] = -w_ij D_ij / max(d(x_i, x_j), floor)` off the diagonal and
/// row sums zero. Equal to `V` whenever `D` already matches the embedded
/// distances.
pub fn compute_b(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
    floor: f64,
) -> Result<DenseMatrix> {
    check_problem(d, w, space)?;
    check_embedding(x, d, space)?;
    if !(floor > 0.0) {
        return Err(Error::invalid(format!("distance floor {floor} must be > 0")));
    }
    let n = x.n();
    let mut b = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let xi = x.point(i);
        let mut diag = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let wij = w.get(i, j);
            if wij == 0.0 {
                continue;
            }
            let dij = space.distance_unchecked(xi, x.point(j)).max(floor);
            let entry = -wij * d.get(i, j) / dij;
            b.set(i, j, entry);
            diag -= entry;
        }
        b.set(i, i, diag);
    }
    Ok(b)
}

/// Drift coupling term `C = (W . D - W^T . D^T) 1 w^T` (`.` elementwise):
/// row `i` is `sum_j w_ij (D_ij - D_ji)` times the drift covector. Zero for
/// symmetric data or zero drift.
pub fn compute_c(
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
) -> Result<DenseMatrix> {
    check_problem(d, w, space)?;
    let n = d.n();
    let m = space.dim();
    let omega = space.omega();
    let mut c = DenseMatrix::zeros(n, m);
    for i in 0..n {
        let mut net = 0.0;
        for j in 0..n {
            let wij = w.get(i, j);
            if wij == 0.0 {
                continue;
            }
            net += wij * (d.get(i, j) - d.get(j, i));
        }
        for k in 0..m {
            c.set(i, k, net * omega[k]);
        }
    }
    Ok(c)
}

/// Majorizer matrix: the classical Guttman transform of the *symmetrized*
/// data, `coeff_ij = w_ij (D_ij + D_ji) / (2 max(||x_i - x_j||, floor))`,
/// assembled as a symmetric Laplacian. This is the matrix the update
/// actually uses; the Cauchy-Schwarz bound that justifies it lives on the
/// Euclidean norm, hence the Euclidean denominator.
pub(crate) fn majorizer_b(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    floor: f64,
) -> DenseMatrix {
    let n = x.n();
    let mut b = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let wij = w.get(i, j);
            if wij == 0.0 {
                continue;
            }
            let mut sq = 0.0;
            for (a, bb) in x.point(i).iter().zip(x.point(j)) {
                sq += (a - bb) * (a - bb);
            }
            let denom = sq.sqrt().max(floor);
            let coeff = wij * (d.get(i, j) + d.get(j, i)) / (2.0 * denom);
            b.set(i, j, -coeff);
            b.set(j, i, -coeff);
            b.set(i, i, b.get(i, i) + coeff);
            b.set(j, j, b.get(j, j) + coeff);
        }
    }
    b
}

/// Stress at or below `NEGLIGIBLE_STRESS * stress_scale(d, w)` is
/// indistinguishable from an exact fit at double precision; the solvers
/// stop there and report convergence.
pub(crate) const NEGLIGIBLE_STRESS: f64 = 1e-13;

/// Total weighted squared-dissimilarity mass, the natural scale of the
/// stress on a given problem.
pub(crate) fn stress_scale(d: &DissimilarityMatrix, w: &WeightMatrix) -> f64 {
    let n = w.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let wij = w.get(i, j);
            if wij == 0.0 {
                continue;
            }
            let dij = d.get(i, j);
            total += wij * dij * dij;
        }
    }
    total
}

/// The stress evaluated through its trace expansion,
///
/// ```text
/// 2 tr(X^T V X) + 2 tr(X^T V X w w^T) + 2 tr(C X^T)
///   - 4 tr(X^T B_M(X) X) + sum_ij w_ij D_ij^2
/// ```
///
/// with `B_M` the majorizer matrix. Agrees with [`finsler_stress`] to
/// rounding; exercised as a consistency check on `V`, `C`, and `B_M`.
pub fn finsler_stress_trace_form(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
    floor: f64,
) -> Result<f64> {
    check_problem(d, w, space)?;
    check_embedding(x, d, space)?;
    let n = x.n();
    let v = compute_v(w);
    let c = compute_c(d, w, space)?;
    let bm = majorizer_b(x, d, w, floor);
    let vx = v.matmul(x.coords())?;
    let bx = bm.matmul(x.coords())?;
    let omega = space.omega();

    let mut tr_xvx = 0.0;
    let mut tr_xbx = 0.0;
    let mut tr_cxt = 0.0;
    let mut tr_vw = 0.0;
    for i in 0..n {
        tr_xvx += dot(x.point(i), vx.row(i));
        tr_xbx += dot(x.point(i), bx.row(i));
        tr_cxt += dot(c.row(i), x.point(i));
        let xw = dot(x.point(i), omega);
        let vxw = dot(vx.row(i), omega);
        tr_vw += xw * vxw;
    }
    Ok(2.0 * tr_xvx + 2.0 * tr_vw + 2.0 * tr_cxt - 4.0 * tr_xbx + stress_scale(d, w))
}

pub(crate) fn resolve_floor(d: &DissimilarityMatrix, config: &SolverConfig) -> Result<f64> {
    match config.distance_floor {
        Some(f) => {
            if !(f > 0.0) {
                return Err(Error::invalid(format!("distance floor {f} must be > 0")));
            }
            Ok(f)
        }
        None => Ok((1e-9 * d.max_finite()).max(f64::MIN_POSITIVE)),
    }
}
