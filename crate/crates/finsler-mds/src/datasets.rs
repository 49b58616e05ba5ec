//! Seeded synthetic datasets with known ground truth.
//!
//! Every generator takes an explicit seed and is bit-reproducible: the same
//! seed yields the same floating point values on every run and thread
//! count. Drift fields are stored as unit-capped direction vectors on the
//! cloud, with the overall strength in `alpha_tilde`, matching what
//! [`build_knn_digraph`](crate::dissimilarity::build_knn_digraph) expects.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dissimilarity::PointCloudWithField;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

const ROLL_T_MIN: f64 = 1.5 * std::f64::consts::PI;
const ROLL_T_MAX: f64 = 4.5 * std::f64::consts::PI;
const ROLL_WIDTH: f64 = 12.0;

// Radial scale of the spiral. Adjacent windings sit 2*pi*ROLL_PITCH apart,
// and that gap must stay clear of the k-nearest-neighbour reach at the
// smallest supported sample counts. Near a corner of the strip a point sees
// only a quarter-disc of neighbours, so its k-th neighbour sits at radius
// about sqrt(4k / (pi rho)) with rho the sampling density; at n = 500,
// k = 10 on this strip that is ~7.5, safely inside the gap of ~12.6.
const ROLL_PITCH: f64 = 2.0;

/// Arc length of the spiral `t -> ROLL_PITCH * (t cos t, t sin t)` from the
/// inner rim `t = ROLL_T_MIN`. Antiderivative of `ROLL_PITCH * sqrt(1 + t^2)`.
fn spiral_arc_length(t: f64) -> f64 {
    fn primitive(t: f64) -> f64 {
        0.5 * (t * (1.0 + t * t).sqrt() + t.asinh())
    }
    ROLL_PITCH * (primitive(t) - primitive(ROLL_T_MIN))
}

/// Inverse of [`spiral_arc_length`] by bisection; `s` must lie within the
/// roll's arc length range.
fn spiral_parameter_at(s: f64) -> f64 {
    let mut lo = ROLL_T_MIN;
    let mut hi = ROLL_T_MAX;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if spiral_arc_length(mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn roll_point(t: f64, w: f64) -> [f64; 3] {
    [ROLL_PITCH * t * t.cos(), w, ROLL_PITCH * t * t.sin()]
}

/// Unit tangent of the spiral in the direction of increasing `t`.
fn roll_tangent(t: f64) -> [f64; 3] {
    let norm = (1.0 + t * t).sqrt();
    [
        (t.cos() - t * t.sin()) / norm,
        0.0,
        (t.sin() + t * t.cos()) / norm,
    ]
}

/// A rolled-up strip in three dimensions whose intrinsic geometry is a
/// flat rectangle, with a drift field winding along the roll.
#[derive(Debug, Clone)]
pub struct SwissRollSample {
    pub cloud: PointCloudWithField,
    /// `(t, w)` surface parameters per point.
    pub params: Vec<[f64; 2]>,
    /// Unrolled coordinate along the spiral, zero at the inner rim. With
    /// the strip's width coordinate this gives the point's intrinsic
    /// position, so any intrinsic quantity can be computed exactly.
    pub arc_length: Vec<f64>,
}

/// Sampling is uniform on the *unrolled* strip `(s, w)`, where `s` is arc
/// length along the spiral: the surface density does not thin out on the
/// outer windings, which keeps k-nearest-neighbour balls from reaching
/// across the inter-winding gap on modest sample counts.
pub fn swiss_roll(n: usize, alpha_tilde: f64, seed: u64) -> Result<SwissRollSample> {
    if n == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    let total_s = spiral_arc_length(ROLL_T_MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DenseMatrix::zeros(n, 3);
    let mut drift = DenseMatrix::zeros(n, 3);
    let mut params = Vec::with_capacity(n);
    let mut arc_length = Vec::with_capacity(n);
    for i in 0..n {
        let s = rng.gen_range(0.0..total_s);
        let w = rng.gen_range(0.0..ROLL_WIDTH);
        let t = spiral_parameter_at(s);
        let p = roll_point(t, w);
        let g = roll_tangent(t);
        for c in 0..3 {
            points.set(i, c, p[c]);
            drift.set(i, c, g[c]);
        }
        params.push([t, w]);
        arc_length.push(s);
    }
    Ok(SwissRollSample {
        cloud: PointCloudWithField::new(points, drift, alpha_tilde)?,
        params,
        arc_length,
    })
}

/// [`swiss_roll`] with a rectangular region of the *unrolled* strip left
/// unsampled, plus the rim band around it.
#[derive(Debug, Clone)]
pub struct HoleRollSample {
    /// Only the points outside the hole.
    pub cloud: PointCloudWithField,
    pub params: Vec<[f64; 2]>,
    pub arc_length: Vec<f64>,
    /// Marks retained points within one mean sample spacing of the hole.
    pub boundary: Vec<bool>,
    /// Hole extent along the unrolled coordinate.
    pub hole_s_range: [f64; 2],
    /// Hole extent across the strip.
    pub hole_w_range: [f64; 2],
}

/// Euclidean distance from `(s, w)` to an axis-aligned rectangle, zero
/// inside.
fn rect_distance(s: f64, w: f64, s_range: [f64; 2], w_range: [f64; 2]) -> f64 {
    let ds = (s_range[0] - s).max(0.0).max(s - s_range[1]);
    let dw = (w_range[0] - w).max(0.0).max(w - w_range[1]);
    (ds * ds + dw * dw).sqrt()
}

/// Draws `n` candidates exactly as [`swiss_roll`] does, then removes the
/// ones inside a rectangular hole covering 10% of the strip's length,
/// offset toward the outer end, and the middle 20% of its width. The
/// returned cloud is therefore smaller than `n`. Boundary membership uses
/// a band of width `sqrt(strip area / n)`, the mean sample spacing.
///
/// The hole is short along the spiral so that the ambient chord across it
/// stays close to the surface distance, and it sits off-centre because the
/// through-hole cost bound is deliberately loose in the drift direction:
/// downstream consistency screens flag close to every pair whose travel
/// interval spans the hole, so the hole must leave the majority of pairs
/// untouched for those screens to retain anything.
pub fn swiss_roll_with_hole(n: usize, alpha_tilde: f64, seed: u64) -> Result<HoleRollSample> {
    let full = swiss_roll(n, alpha_tilde, seed)?;
    let total_s = spiral_arc_length(ROLL_T_MAX);
    let hole_s_range = [0.7 * total_s, 0.8 * total_s];
    let hole_w_range = [0.4 * ROLL_WIDTH, 0.6 * ROLL_WIDTH];
    let band = (total_s * ROLL_WIDTH / n as f64).sqrt();

    let mut points_rows = Vec::new();
    let mut drift_rows = Vec::new();
    let mut params = Vec::new();
    let mut arc_length = Vec::new();
    let mut boundary = Vec::new();
    for i in 0..n {
        let s = full.arc_length[i];
        let w = full.params[i][1];
        let gap = rect_distance(s, w, hole_s_range, hole_w_range);
        let inside = s >= hole_s_range[0]
            && s <= hole_s_range[1]
            && w >= hole_w_range[0]
            && w <= hole_w_range[1];
        if inside {
            continue;
        }
        points_rows.push(full.cloud.point(i).to_vec());
        drift_rows.push(full.cloud.drift_at(i).to_vec());
        params.push(full.params[i]);
        arc_length.push(s);
        boundary.push(gap <= band);
    }
    if points_rows.len() < 2 {
        return Err(Error::invalid(
            "hole removal left fewer than two points".to_string(),
        ));
    }
    let points = DenseMatrix::from_rows(points_rows)?;
    let drift = DenseMatrix::from_rows(drift_rows)?;
    Ok(HoleRollSample {
        cloud: PointCloudWithField::new(points, drift, alpha_tilde)?,
        params,
        arc_length,
        boundary,
        hole_s_range,
        hole_w_range,
    })
}

/// The planar current field `(sin(nu x) + cos(nu y), cos(nu x) - sin(nu y))`
/// on `[0, 10]^2`, evaluated raw (before normalization or sign flip).
pub fn current_velocity(x: &[f64], nu: f64) -> [f64; 2] {
    [
        (nu * x[0]).sin() + (nu * x[1]).cos(),
        (nu * x[0]).cos() - (nu * x[1]).sin(),
    ]
}

/// Uniform samples of `[0, 10]^2` under a smooth current. The stored drift
/// covector is the *negated* normalized current: travel with the flow gets
/// cheaper, and the covector penalizes motion against it. Normalization
/// divides by the largest sampled speed, so the strongest drift in the
/// cloud has unit direction norm.
pub fn current_map(n: usize, nu: f64, alpha_tilde: f64, seed: u64) -> Result<PointCloudWithField> {
    if n == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    if !nu.is_finite() {
        return Err(Error::invalid("frequency must be finite".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DenseMatrix::zeros(n, 2);
    let mut velocity = Vec::with_capacity(n);
    let mut max_speed = 0.0f64;
    for i in 0..n {
        let x = rng.gen_range(0.0..10.0);
        let y = rng.gen_range(0.0..10.0);
        points.set(i, 0, x);
        points.set(i, 1, y);
        let v = current_velocity(&[x, y], nu);
        max_speed = max_speed.max((v[0] * v[0] + v[1] * v[1]).sqrt());
        velocity.push(v);
    }
    let mut drift = DenseMatrix::zeros(n, 2);
    if max_speed > 0.0 {
        for (i, v) in velocity.iter().enumerate() {
            drift.set(i, 0, -v[0] / max_speed);
            drift.set(i, 1, -v[1] / max_speed);
        }
    }
    PointCloudWithField::new(points, drift, alpha_tilde)
}

/// A channel `[0, 10] x [0, 1]` with downstream flow strongest mid-channel
/// and zero at the banks: speed `1 - |2y - 1|`, direction `+x`. The profile
/// peaks at exactly 1, so no sample-dependent normalization is involved.
pub fn river(n: usize, alpha_tilde: f64, seed: u64) -> Result<PointCloudWithField> {
    if n == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = DenseMatrix::zeros(n, 2);
    let mut drift = DenseMatrix::zeros(n, 2);
    for i in 0..n {
        let x = rng.gen_range(0.0..10.0);
        let y = rng.gen_range(0.0..1.0);
        points.set(i, 0, x);
        points.set(i, 1, y);
        let speed = 1.0 - (2.0 * y - 1.0).abs();
        drift.set(i, 0, -speed);
    }
    PointCloudWithField::new(points, drift, alpha_tilde)
}

/// Inverse of the roll's arc length, exposed for tests and evaluation
/// against the known intrinsic geometry.
pub fn roll_parameter_at_arc_length(s: f64) -> Result<f64> {
    let total = spiral_arc_length(ROLL_T_MAX);
    if !(0.0..=total).contains(&s) {
        return Err(Error::invalid(format!(
            "arc length {s} outside the roll range [0, {total}]"
        )));
    }
    Ok(spiral_parameter_at(s))
}

/// Total unrolled length of the spiral strip.
pub fn roll_total_arc_length() -> f64 {
    spiral_arc_length(ROLL_T_MAX)
}

/// Width of the strip.
pub fn roll_width() -> f64 {
    ROLL_WIDTH
}
