//! Cyclic Jacobi eigen-decomposition for symmetric matrices.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

const MAX_SWEEPS: usize = 100;

/// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Returns unsorted eigenvalues and the eigenvectors as matrix columns.
/// The caller is responsible for the symmetry check; the routine symmetrizes
/// its working copy so roundoff asymmetry cannot bias the rotations.
pub(crate) fn jacobi_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = a.rows();
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, 0.5 * (a.get(i, j) + a.get(j, i)));
        }
    }
    let mut v = DenseMatrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    if n <= 1 {
        return Ok((d, v));
    }

    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                off += m.get(p, q).abs();
            }
        }
        if off == 0.0 {
            return Ok((d, v));
        }
        // First sweeps rotate only entries above a coarse threshold; later
        // sweeps take everything (standard staged schedule).
        let thresh = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let g = 100.0 * apq.abs();
                // An entry that is negligible against both diagonal values
                // is set to zero once the process has settled.
                if sweep > 3
                    && d[p].abs() + g == d[p].abs()
                    && d[q].abs() + g == d[q].abs()
                {
                    m.set(p, q, 0.0);
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                m.set(p, q, 0.0);
                let rotate = |m: &mut DenseMatrix, i: usize, j: usize, k: usize, l: usize| {
                    let g = m.get(i, j);
                    let h = m.get(k, l);
                    m.set(i, j, g - s * (h + g * tau));
                    m.set(k, l, h + s * (g - h * tau));
                };
                for j in 0..p {
                    rotate(&mut m, j, p, j, q);
                }
                for j in (p + 1)..q {
                    rotate(&mut m, p, j, j, q);
                }
                for j in (q + 1)..n {
                    rotate(&mut m, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }

    let mut off = 0.0;
    for p in 0..n - 1 {
        for q in (p + 1)..n {
            off += m.get(p, q).abs();
        }
    }
    Err(Error::NoConvergence {
        what: "Jacobi eigen-decomposition",
        iterations: MAX_SWEEPS,
        residual: off,
    })
}
