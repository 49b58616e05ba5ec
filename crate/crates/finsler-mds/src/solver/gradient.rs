//! First-order reference solver.
//!
//! Plain gradient descent with Armijo backtracking. Slower than the
//! majorization loop and kept deliberately simple: it shares nothing with
//! the update derivation, which makes it a useful independent check that
//! both land on comparable stress values.

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::geometry::RandersSpace;
use crate::linalg::DenseMatrix;
use crate::solver::init::initial_embedding;
use crate::solver::{
    check_problem, resolve_floor, stress_unchecked, Embedding, SolveReport, SolverConfig,
    WeightMatrix,
};

const ARMIJO_SLOPE: f64 = 1e-4;
const MAX_BACKTRACKS: u32 = 60;

/// Stress gradient with respect to every coordinate. Rows follow points.
///
/// For the pair `(p, j)` the distance `d(x_p, x_j)` contributes
/// `2 w_pj (d - D_pj) (u - w)` to row `p`, with `u` the unit vector from
/// `x_j` to `x_p`; the reverse pair contributes `2 w_jp (d' - D_jp)
/// (u + w)`. Coincident points take `u = 0`, a valid subgradient choice.
pub(crate) fn stress_gradient(
    x: &Embedding,
    d: &DissimilarityMatrix,
    w: &WeightMatrix,
    space: &RandersSpace,
    floor: f64,
) -> DenseMatrix {
    let n = x.n();
    let m = x.dim();
    let omega = space.omega();
    let mut g = DenseMatrix::zeros(n, m);
    for p in 0..n {
        for j in 0..n {
            if j == p {
                continue;
            }
            let delta: Vec<f64> = x
                .point(p)
                .iter()
                .zip(x.point(j))
                .map(|(a, b)| a - b)
                .collect();
            let norm = delta.iter().map(|v| v * v).sum::<f64>().sqrt();
            let unit: Vec<f64> = if norm < floor {
                vec![0.0; m]
            } else {
                delta.iter().map(|v| v / norm).collect()
            };
            let drift: f64 = omega.iter().zip(&delta).map(|(a, b)| a * b).sum();

            let w_out = w.get(p, j);
            if w_out > 0.0 {
                // d(x_p, x_j) = norm - drift (displacement is -delta).
                let resid = (norm - drift) - d.get(p, j);
                let coeff = 2.0 * w_out * resid;
                let row = g.row_mut(p);
                for c in 0..m {
                    row[c] += coeff * (unit[c] - omega[c]);
                }
            }
            let w_in = w.get(j, p);
            if w_in > 0.0 {
                let resid = (norm + drift) - d.get(j, p);
                let coeff = 2.0 * w_in * resid;
                let row = g.row_mut(p);
                for c in 0..m {
                    row[c] += coeff * (unit[c] + omega[c]);
                }
            }
        }
    }
    g
}

/// Minimizes the Finsler stress by backtracking gradient descent.
///
/// Uses the same initialization, stopping rule, and report shape as
/// [`run_finsler_smacof`](crate::solver::run_finsler_smacof); only the
/// descent direction differs.
pub fn gradient_descent_solve(
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
    let floor = resolve_floor(d, config)?;
    let zero_floor = super::NEGLIGIBLE_STRESS * super::stress_scale(d, w);
    let mut x = x0;
    let mut stress = stress_unchecked(&x, d, w, space);
    if !stress.is_finite() {
        return Err(Error::NonFinite("initial stress"));
    }
    let mut history = vec![stress];
    let mut converged = stress <= zero_floor;
    let mut step = 1.0;
    while !converged && history.len() <= config.max_iters {
        let g = stress_gradient(&x, d, w, space, floor);
        let gnorm_sq: f64 = g.data().iter().map(|v| v * v).sum();
        if gnorm_sq == 0.0 {
            converged = true;
            break;
        }
        // Grow the trial step between iterations so the search adapts in
        // both directions.
        step *= 2.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let mut trial = x.coords().clone();
            for (t, gv) in trial.data_mut().iter_mut().zip(g.data()) {
                *t -= step * gv;
            }
            let cand = Embedding::new(trial)?;
            let s_new = stress_unchecked(&cand, d, w, space);
            if s_new.is_finite() && s_new <= stress - ARMIJO_SLOPE * step * gnorm_sq {
                accepted = Some((cand, s_new));
                break;
            }
            step *= 0.5;
        }
        let Some((cand, s_new)) = accepted else {
            // No acceptable step at machine resolution.
            converged = true;
            break;
        };
        x = cand;
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
