//! Randers metrics and the Zermelo navigation correspondence.
//!
//! A Randers metric on `R^m` is `F(u) = sqrt(u^T M u) + w^T u` with `M`
//! symmetric positive definite and `||w||` measured in `M^{-1}` strictly
//! below one; positivity of `F` away from the origin follows. The *canonical*
//! form has `M = I`, where the induced distance between points is available
//! in closed form and geodesics are straight segments, which is what makes
//! stress majorization over these spaces tractable.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, top_eigenpairs, DenseMatrix};

/// Canonical Randers space: `F(u) = ||u||_2 + w^T u` with `||w||_2 < 1`.
#[derive(Debug, Clone)]
pub struct RandersSpace {
    omega: Vec<f64>,
    alpha: f64,
}

/// Margin kept between `||w||` and 1; at the boundary the metric degenerates
/// (vectors opposite the drift get length zero).
const ALPHA_MARGIN: f64 = 1e-12;

impl RandersSpace {
    pub fn new(omega: Vec<f64>) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::invalid("Randers space needs dimension >= 1"));
        }
        if omega.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("RandersSpace::new"));
        }
        let alpha = norm2(&omega);
        if alpha >= 1.0 - ALPHA_MARGIN {
            return Err(Error::invalid(format!(
                "drift norm {alpha} must be < 1 for a positive metric"
            )));
        }
        Ok(RandersSpace { omega, alpha })
    }

    /// Drift of magnitude `alpha` along the last coordinate axis, the
    /// convention used by the command-line tools.
    pub fn axis_aligned(dim: usize, alpha: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("Randers space needs dimension >= 1"));
        }
        if !(0.0..1.0 - ALPHA_MARGIN).contains(&alpha) {
            return Err(Error::invalid(format!("alpha {alpha} must lie in [0, 1)")));
        }
        let mut omega = vec![0.0; dim];
        omega[dim - 1] = alpha;
        Ok(RandersSpace { omega, alpha })
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::axis_aligned(dim, 0.0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// `F(u) = ||u||_2 + w^T u`.
    pub fn metric(&self, u: &[f64]) -> Result<f64> {
        self.check_dim(u, "RandersSpace::metric")?;
        Ok(self.metric_unchecked(u))
    }

    #[inline]
    pub(crate) fn metric_unchecked(&self, u: &[f64]) -> f64 {
        norm2(u) + dot(&self.omega, u)
    }

    /// Induced distance `d(x, y) = ||y - x||_2 + w^T (y - x)`.
    ///
    /// Asymmetric in general: `d(x, y) + d(y, x) = 2 ||y - x||_2`.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_dim(x, "RandersSpace::distance")?;
        self.check_dim(y, "RandersSpace::distance")?;
        Ok(self.distance_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut sq = 0.0;
        let mut drift = 0.0;
        for k in 0..x.len() {
            let d = y[k] - x[k];
            sq += d * d;
            drift += self.omega[k] * d;
        }
        sq.sqrt() + drift
    }

    fn check_dim(&self, v: &[f64], context: &'static str) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim(),
                actual: v.len(),
            });
        }
        Ok(())
    }
}

/// Piecewise-linear path with at least two vertices.
#[derive(Debug, Clone)]
pub struct Polyline {
    vertices: Vec<Vec<f64>>,
}

impl Polyline {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::invalid("polyline needs at least two vertices"));
        }
        let dim = vertices[0].len();
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "Polyline::new",
                    expected: dim,
                    actual: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("Polyline::new"));
            }
        }
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::invalid("consecutive polyline vertices coincide"));
            }
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn first(&self) -> &[f64] {
        &self.vertices[0]
    }

    pub fn last(&self) -> &[f64] {
        self.vertices.last().unwrap()
    }
}

/// Length of a polyline under the canonical metric: the sum of segment
/// lengths `F(v_{k+1} - v_k)`. Never below the straight-line distance
/// between the endpoints (geodesics are straight).
pub fn polyline_length(space: &RandersSpace, path: &Polyline) -> Result<f64> {
    let mut total = 0.0;
    for pair in path.vertices().windows(2) {
        let seg: Vec<f64> = pair[1].iter().zip(&pair[0]).map(|(b, a)| b - a).collect();
        total += space.metric(&seg)?;
    }
    Ok(total)
}

/// General Randers metric `F(u) = sqrt(u^T M u) + w^T u`.
#[derive(Debug, Clone)]
pub struct GeneralRandersMetric {
    m: DenseMatrix,
    omega: Vec<f64>,
}

impl GeneralRandersMetric {
    /// Validates that `M` is symmetric (within `1e-10` relative), positive
    /// definite, and that `w^T M^{-1} w < 1`.
    pub fn new(m: DenseMatrix, omega: Vec<f64>) -> Result<Self> {
        let n = m.rows();
        if m.cols() != n || omega.len() != n {
            return Err(Error::DimensionMismatch {
                context: "GeneralRandersMetric::new",
                expected: n,
                actual: if m.cols() != n { m.cols() } else { omega.len() },
            });
        }
        let asym = m.max_asymmetry();
        if asym > 1e-10 * m.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { max_asymmetry: asym });
        }
        let (evals, evecs) = top_eigenpairs(&m, n)?;
        let lmin = *evals.last().unwrap();
        if lmin <= 0.0 {
            return Err(Error::NotPositiveDefinite { eigenvalue: lmin });
        }
        // ||w||^2 in M^{-1} via the eigenbasis.
        let mut wnorm_sq = 0.0;
        for (idx, &lambda) in evals.iter().enumerate() {
            let proj: f64 = (0..n).map(|r| evecs.get(r, idx) * omega[r]).sum();
            wnorm_sq += proj * proj / lambda;
        }
        if wnorm_sq >= 1.0 {
            return Err(Error::invalid(format!(
                "drift norm {:.6} in M^-1 must be < 1",
                wnorm_sq.sqrt()
            )));
        }
        Ok(GeneralRandersMetric { m, omega })
    }

    pub fn m_tensor(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn metric(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "GeneralRandersMetric::metric",
                expected: self.dim(),
                actual: u.len(),
            });
        }
        let mu = self.m.mat_vec(u)?;
        Ok(dot(u, &mu).max(0.0).sqrt() + dot(&self.omega, u))
    }
}

/// Zermelo navigation data: a sea metric `M` and a current `v` with
/// `||v||_M < 1` (the current never overpowers the vessel).
#[derive(Debug, Clone)]
pub struct ZermeloField {
    m: DenseMatrix,
    v: Vec<f64>,
}

impl ZermeloField {
    pub fn new(m: DenseMatrix, v: Vec<f64>) -> Result<Self> {
        let n = m.rows();
        if m.cols() != n || v.len() != n {
            return Err(Error::DimensionMismatch {
                context: "ZermeloField::new",
                expected: n,
                actual: if m.cols() != n { m.cols() } else { v.len() },
            });
        }
        let asym = m.max_asymmetry();
        if asym > 1e-10 * m.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { max_asymmetry: asym });
        }
        let (evals, _) = top_eigenpairs(&m, n)?;
        let lmin = *evals.last().unwrap();
        if lmin <= 0.0 {
            return Err(Error::NotPositiveDefinite { eigenvalue: lmin });
        }
        let mv = m.mat_vec(&v)?;
        let vnorm_sq = dot(&v, &mv);
        if vnorm_sq >= 1.0 {
            return Err(Error::invalid(format!(
                "current norm {:.6} in M must be < 1",
                vnorm_sq.sqrt()
            )));
        }
        Ok(ZermeloField { m, v })
    }

    pub fn m_tensor(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn current(&self) -> &[f64] {
        &self.v
    }

    /// First-order form for weak currents: the sea metric is kept and the
    /// drift is `-M v`. Always a valid Randers metric since
    /// `||M v||_{M^{-1}} = ||v||_M < 1`.
    pub fn small_current_approximation(&self) -> Result<GeneralRandersMetric> {
        let mv = self.m.mat_vec(&self.v)?;
        GeneralRandersMetric::new(self.m.clone(), mv.iter().map(|x| -x).collect())
    }
}

/// Exact conversion of Zermelo data to the Randers metric whose unit ball
/// is the `M`-unit ball translated by the current:
///
/// ```text
/// M_v = (M v v^T M + (1 - ||v||_M^2) M) / (1 - ||v||_M^2)^2
/// w_v = -M v / (1 - ||v||_M^2)
/// ```
///
/// The result satisfies `|| u / F(u) - v ||_M = 1` for every `u != 0`, and
/// always passes [`GeneralRandersMetric::new`] validation.
pub fn zermelo_to_randers(field: &ZermeloField) -> Result<GeneralRandersMetric> {
    let n = field.m.rows();
    let mv = field.m.mat_vec(&field.v)?;
    let mu = 1.0 - dot(&field.v, &mv);
    let mu_sq = mu * mu;
    let mut m_v = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m_v.set(i, j, (mv[i] * mv[j] + mu * field.m.get(i, j)) / mu_sq);
        }
    }
    let omega: Vec<f64> = mv.iter().map(|x| -x / mu).collect();
    GeneralRandersMetric::new(m_v, omega)
}
