//! Restarted GMRES over a caller-supplied linear operator.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2};

const RESTART: usize = 50;

/// Outcome of an iterative solve.
///
/// Non-convergence is not an error: the best iterate found is returned with
/// `converged == false` so callers can decide whether the residual is
/// acceptable or a direct fallback is warranted.
#[derive(Debug, Clone)]
pub struct IterativeSolution {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Solves `A x = b` with restarted GMRES(50), where `A` is given only as the
/// action `apply_a`.
///
/// Convergence is declared at `||b - A x|| <= tol * ||b||`. A zero right-hand
/// side returns the zero vector immediately. Only a NaN or infinity inside
/// the Krylov recurrence is fatal.
pub fn iterative_solve<F>(
    apply_a: F,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<IterativeSolution>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    gmres(apply_a, b, None, tol, max_iter, RESTART)
}

pub(crate) fn gmres<F>(
    apply_a: F,
    b: &[f64],
    x0: Option<&[f64]>,
    tol: f64,
    max_iter: usize,
    restart: usize,
) -> Result<IterativeSolution>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = b.len();
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        return Ok(IterativeSolution {
            x: vec![0.0; n],
            residual_norm: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let target = tol * bnorm;
    let mut x = match x0 {
        Some(v) => {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "gmres initial guess",
                    expected: n,
                    actual: v.len(),
                });
            }
            v.to_vec()
        }
        None => vec![0.0; n],
    };
    let mut total_iters = 0usize;

    loop {
        let ax = check_finite(apply_a(&x))?;
        if ax.len() != n {
            return Err(Error::DimensionMismatch {
                context: "gmres operator output",
                expected: n,
                actual: ax.len(),
            });
        }
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let beta = norm2(&r);
        if beta <= target {
            return Ok(IterativeSolution {
                x,
                residual_norm: beta,
                iterations: total_iters,
                converged: true,
            });
        }
        if total_iters >= max_iter {
            return Ok(IterativeSolution {
                x,
                residual_norm: beta,
                iterations: total_iters,
                converged: false,
            });
        }

        // Arnoldi with modified Gram-Schmidt; H kept upper-Hessenberg and
        // reduced on the fly by Givens rotations.
        let m = restart;
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut h = vec![vec![0.0f64; m]; m + 1];
        let mut cs = vec![0.0f64; m];
        let mut sn = vec![0.0f64; m];
        let mut g = vec![0.0f64; m + 1];
        g[0] = beta;
        let mut cols = 0;

        for j in 0..m {
            let mut w = check_finite(apply_a(&basis[j]))?;
            for i in 0..=j {
                let hij = dot(&w, &basis[i]);
                h[i][j] = hij;
                for (wk, vk) in w.iter_mut().zip(&basis[i]) {
                    *wk -= hij * vk;
                }
            }
            let hnext = norm2(&w);
            h[j + 1][j] = hnext;
            total_iters += 1;
            cols = j + 1;

            for i in 0..j {
                let t = cs[i] * h[i][j] + sn[i] * h[i + 1][j];
                h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
                h[i][j] = t;
            }
            let denom = (h[j][j] * h[j][j] + h[j + 1][j] * h[j + 1][j]).sqrt();
            if denom == 0.0 {
                cs[j] = 1.0;
                sn[j] = 0.0;
            } else {
                cs[j] = h[j][j] / denom;
                sn[j] = h[j + 1][j] / denom;
            }
            h[j][j] = cs[j] * h[j][j] + sn[j] * h[j + 1][j];
            h[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] *= cs[j];

            let res = g[j + 1].abs();
            if res <= target || total_iters >= max_iter || hnext == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / hnext).collect());
        }

        // Back-substitute the reduced triangular system and update x.
        let mut y = vec![0.0f64; cols];
        for i in (0..cols).rev() {
            let mut acc = g[i];
            for k in (i + 1)..cols {
                acc -= h[i][k] * y[k];
            }
            y[i] = if h[i][i] != 0.0 { acc / h[i][i] } else { 0.0 };
        }
        for (i, yi) in y.iter().enumerate() {
            for (xk, vk) in x.iter_mut().zip(&basis[i]) {
                *xk += yi * vk;
            }
        }
    }
}

fn check_finite(v: Vec<f64>) -> Result<Vec<f64>> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("gmres operator application"));
    }
    Ok(v)
}
