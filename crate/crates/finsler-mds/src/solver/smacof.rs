//! The majorize-minimize iteration.

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::geometry::RandersSpace;
use crate::linalg::{gmres, sym_pseudo_inverse, unvec_columns, vec_columns, DenseMatrix};
use crate::solver::init::initial_embedding;
use crate::solver::{
    check_problem, compute_c, compute_v, majorizer_b, resolve_floor, stress_unchecked, Embedding,
    LinearSolver, SolveReport, SolverConfig, WeightMatrix,
};

/// Problems larger than this switch from the dense pseudo-inverse to the
/// iterative solver under [`LinearSolver::Auto`].
const AUTO_ITERATIVE_THRESHOLD: usize = 500;

/// Eigenvalue cutoff (relative to the largest) below which the Laplacian
/// spectrum is treated as its nullspace.
const PINV_CUTOFF: f64 = 1e-12;

const GMRES_RESTART: usize = 50;

/// `X (I + w w^T)`: each row gains `(row . w) w`.
pub(crate) fn apply_right_i_plus_wwt(x: &DenseMatrix, omega: &[f64]) -> DenseMatrix {
    let mut out = x.clone();
    for i in 0..out.rows() {
        let row = out.row_mut(i);
        let proj: f64 = row.iter().zip(omega).map(|(a, b)| a * b).sum();
        for (r, o) in row.iter_mut().zip(omega) {
            *r += proj * o;
        }
    }
    out
}

/// `X (I + w w^T)^{-1} = X (I - w w^T / (1 + |w|^2))` by Sherman-Morrison.
fn apply_right_inverse_i_plus_wwt(x: &DenseMatrix, omega: &[f64]) -> DenseMatrix {
    let alpha_sq: f64 = omega.iter().map(|v| v * v).sum();
    let scale = 1.0 / (1.0 + alpha_sq);
    let mut out = x.clone();
    for i in 0..out.rows() {
        let row = out.row_mut(i);
        let proj: f64 = row.iter().zip(omega).map(|(a, b)| a * b).sum();
        for (r, o) in row.iter_mut().zip(omega) {
            *r -= proj * scale * o;
        }
    }
    out
}

struct StepContext<'a> {
    d: &'a DissimilarityMatrix,
    w: &'a WeightMatrix,
    space: &'a RandersSpace,
    floor: f64,
    v: DenseMatrix,
    c_half: DenseMatrix,
    v_pinv: Option<DenseMatrix>,
    use_iterative: bool,
    stabilized: bool,
    linear_tol: f64,
    max_linear_iters: usize,
}

impl<'a> StepContext<'a> {
    fn new(
        d: &'a DissimilarityMatrix,
        w: &'a WeightMatrix,
        space: &'a RandersSpace,
        config: &SolverConfig,
    ) -> Result<Self> {
        let floor = resolve_floor(d, config)?;
        let n = d.n();
        let m = space.dim();
        let use_iterative = match config.linear_solver {
            LinearSolver::Direct => false,
            LinearSolver::Iterative => true,
            LinearSolver::Auto => n > AUTO_ITERATIVE_THRESHOLD,
        };
        let v = compute_v(w);
        let mut c_half = compute_c(d, w, space)?;
        for entry in c_half.data_mut() {
            *entry *= 0.5;
        }
        let v_pinv = if use_iterative {
            None
        } else {
            Some(sym_pseudo_inverse(&v, PINV_CUTOFF)?)
        };
        if !(config.linear_tol > 0.0) {
            return Err(Error::invalid(format!(
                "linear solver tolerance {} must be > 0",
                config.linear_tol
            )));
        }
        Ok(StepContext {
            d,
            w,
            space,
            floor,
            v,
            c_half,
            v_pinv,
            use_iterative,
            stabilized: config.stabilized,
            linear_tol: config.linear_tol,
            max_linear_iters: 10 * n * m,
        })
    }

    fn majorizer_rhs(&self, x: &Embedding) -> Result<DenseMatrix> {
        let bm = majorizer_b(x, self.d, self.w, self.floor);
        let mut rhs = bm.matmul(x.coords())?;
        for (r, c) in rhs.data_mut().iter_mut().zip(self.c_half.data()) {
            *r -= c;
        }
        Ok(rhs)
    }

    fn force_direct(&mut self) {
        self.use_iterative = false;
    }

    fn is_iterative(&self) -> bool {
        self.use_iterative
    }

    fn step_direct(&mut self, rhs: &DenseMatrix) -> Result<Embedding> {
        if self.v_pinv.is_none() {
            self.v_pinv = Some(sym_pseudo_inverse(&self.v, PINV_CUTOFF)?);
        }
        let pinv = self.v_pinv.as_ref().expect("just populated");
        let y = pinv.matmul(rhs)?;
        Embedding::new(apply_right_inverse_i_plus_wwt(&y, self.space.omega()))
    }

    /// `None` means the iterative solver missed its residual target; the
    /// caller falls back to the direct path.
    fn step_iterative(&self, x: &Embedding, rhs: &DenseMatrix) -> Result<Option<Embedding>> {
        let n = x.n();
        let m = x.dim();
        let omega = self.space.omega();
        let system_rhs = if self.stabilized {
            self.v.matmul(rhs)?
        } else {
            rhs.clone()
        };
        let b = vec_columns(&system_rhs);
        let stabilized = self.stabilized;
        let vmat = &self.v;
        let apply = |flat: &[f64]| {
            let xm = unvec_columns(flat, n, m).expect("operator shapes fixed at setup");
            let mut t = vmat.matmul(&xm).expect("operator shapes fixed at setup");
            if stabilized {
                t = vmat.matmul(&t).expect("operator shapes fixed at setup");
            }
            vec_columns(&apply_right_i_plus_wwt(&t, omega))
        };
        let warm = vec_columns(x.coords());
        let sol = gmres(
            &apply,
            &b,
            Some(&warm),
            self.linear_tol,
            self.max_linear_iters,
            GMRES_RESTART,
        )?;
        if !sol.converged {
            return Ok(None);
        }
        Ok(Some(Embedding::new(unvec_columns(&sol.x, n, m)?)?))
    }

    fn step(&mut self, x: &Embedding) -> Result<Embedding> {
        let rhs = self.majorizer_rhs(x)?;
        if self.use_iterative {
            if let Some(sol) = self.step_iterative(x, &rhs)? {
                return Ok(sol);
            }
            self.use_iterative = false;
        }
        self.step_direct(&rhs)
    }
}

/// One majorization update from `x`. Convenience wrapper that rebuilds the
/// solver state on every call; use [`run_finsler_smacof`] for full runs.
pub fn smacof_step(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
    config: &SolverConfig,
) -> Result<Embedding> {
    check_problem(d, w, space)?;
    if x.n() != d.n() || x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            context: "smacof_step embedding",
            expected: d.n() * space.dim(),
            actual: x.n() * x.dim(),
        });
    }
    let mut ctx = StepContext::new(d, w, space, config)?;
    ctx.step(&x.centered())
}

/// Runs the full majorization loop: initialize, iterate the update
/// `V X (I + w w^T) = B(X_k) X_k - C / 2`, stop on a relative stress
/// decrease below `config.rel_stress_tol` or after `config.max_iters`
/// steps.
///
/// The starting configuration is centered first (stress is invariant under
/// translation, and the Laplacian solves are only defined on centered
/// configurations). The reported stress history is strictly non-increasing;
/// a step that fails to decrease the stress, which can only happen at the
/// resolution of floating point, ends the run with the previous iterate.
pub fn run_finsler_smacof(
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
    config: &SolverConfig,
) -> Result<(Embedding, SolveReport)> {
    check_problem(d, w, space)?;
    let x0 = initial_embedding(d, space, config)?.centered();
    if w.total() == 0.0 {
        return Ok((
            x0,
            SolveReport {
                stress_history: vec![0.0],
                iterations: 0,
                converged: true,
                final_stress: 0.0,
            },
        ));
    }
    let mut ctx = StepContext::new(d, w, space, config)?;
    let zero_floor = super::NEGLIGIBLE_STRESS * super::stress_scale(d, w);
    let mut x = x0;
    let mut stress = stress_unchecked(&x, d, w, space);
    if !stress.is_finite() {
        return Err(Error::NonFinite("initial stress"));
    }
    let mut history = vec![stress];
    let mut converged = stress <= zero_floor;
    while !converged && history.len() <= config.max_iters {
        let mut candidate = ctx.step(&x)?;
        let mut s_new = stress_unchecked(&candidate, d, w, space);
        if !s_new.is_finite() {
            return Err(Error::NonFinite("smacof stress"));
        }
        if s_new > stress && ctx.is_iterative() {
            // The inexact linear solve overshot; redo this step exactly.
            ctx.force_direct();
            candidate = ctx.step(&x)?;
            s_new = stress_unchecked(&candidate, d, w, space);
            if !s_new.is_finite() {
                return Err(Error::NonFinite("smacof stress"));
            }
        }
        if s_new > stress {
            // Numerical floor reached.
            converged = true;
            break;
        }
        x = candidate;
        history.push(s_new);
        if stress - s_new <= config.rel_stress_tol * stress || s_new <= zero_floor {
            converged = true;
        }
        stress = s_new;
    }
    let final_stress = *history.last().expect("history is never empty");
    let iterations = history.len() - 1;
    Ok((
        x,
        SolveReport {
            stress_history: history,
            iterations,
            converged,
            final_stress,
        },
    ))
}
