//! Shortcut-consistency weighting for partially observed geometries.
//!
//! When graph dissimilarities are computed on a point cloud with a region
//! removed, pairs whose connecting paths crossed the removed region come
//! out too large. Rather than detect the region itself, this module bounds
//! every pair from above: a path may leave the sampled set at one boundary
//! point, cross the unsampled gap at a discounted ambient rate (a
//! "wormhole" hop), and re-enter at another boundary point. Pairs whose
//! measured dissimilarity exceeds their cheapest such bound are suspect,
//! and their weight is reduced or zeroed so the embedding stops trying to
//! honor them.

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::par;
use crate::solver::WeightMatrix;

/// Indices of the points that sit on the rim of the unsampled region.
/// Stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySet {
    indices: Vec<usize>,
}

impl BoundarySet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::NodeOutOfRange { index: bad, n });
        }
        Ok(BoundarySet { indices })
    }

    pub fn empty() -> Self {
        BoundarySet { indices: Vec::new() }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        BoundarySet {
            indices: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Ambient discount rate for the gap crossing: `1 - max drift strength`,
/// the slowest the metric can make straight-line travel, so the bound
/// stays a true lower bound on what a geodesic through the gap could cost.
pub fn boundary_cost_factor(alpha_tilde_max: f64) -> Result<f64> {
    if !alpha_tilde_max.is_finite() || !(0.0..1.0).contains(&alpha_tilde_max) {
        return Err(Error::invalid(format!(
            "drift strength {alpha_tilde_max} must lie in [0, 1)"
        )));
    }
    Ok(1.0 - alpha_tilde_max)
}

/// `r_i = min_b D(i, b)`: each point's dissimilarity to its nearest
/// boundary point. Infinite when the boundary is empty or unreachable.
pub fn nearest_boundary_distances(d: &DissimilarityMatrix, boundary: &BoundarySet) -> Vec<f64> {
    (0..d.n())
        .map(|i| {
            boundary
                .indices
                .iter()
                .map(|&b| d.get(i, b))
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Cheapest wormhole bound for every ordered pair:
///
/// ```text
/// K(i, j) = min over boundary points b1, b2 of
///           D(i, b1) + cost_factor * ||p_b1 - p_b2|| + D(b2, j)
/// ```
///
/// computed in two stages (boundary-to-target first, then source-to-
/// boundary) so the cost is `O(|B|^2 n + |B| n^2)` rather than
/// `O(|B|^2 n^2)`. An empty boundary yields an all-infinite matrix: no
/// bound, nothing suspect.
pub fn shortcut_threshold_matrix(
    d: &DissimilarityMatrix,
    points: &DenseMatrix,
    boundary: &BoundarySet,
    cost_factor: f64,
) -> Result<DenseMatrix> {
    let n = d.n();
    if points.rows() != n {
        return Err(Error::DimensionMismatch {
            context: "shortcut_threshold_matrix points",
            expected: n,
            actual: points.rows(),
        });
    }
    if !cost_factor.is_finite() || cost_factor < 0.0 {
        return Err(Error::invalid(format!(
            "cost factor {cost_factor} must be finite and >= 0"
        )));
    }
    let nb = boundary.len();
    if nb == 0 {
        let mut k = DenseMatrix::zeros(n, n);
        k.data_mut().fill(f64::INFINITY);
        return Ok(k);
    }
    let bidx = boundary.indices();
    let mut hop = DenseMatrix::zeros(nb, nb);
    for a in 0..nb {
        for b in 0..nb {
            let pa = points.row(bidx[a]);
            let pb = points.row(bidx[b]);
            let sq: f64 = pa.iter().zip(pb).map(|(x, y)| (x - y) * (x - y)).sum();
            hop.set(a, b, cost_factor * sq.sqrt());
        }
    }
    // best_exit[b1][j] = min over b2 of hop(b1, b2) + D(b2, j).
    let best_exit: Vec<Vec<f64>> = par::map_indexed(nb, |a| {
        (0..n)
            .map(|j| {
                (0..nb)
                    .map(|b| hop.get(a, b) + d.get(bidx[b], j))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    });
    let rows: Vec<Vec<f64>> = par::map_indexed(n, |i| {
        (0..n)
            .map(|j| {
                (0..nb)
                    .map(|a| d.get(i, bidx[a]) + best_exit[a][j])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    });
    DenseMatrix::from_rows(rows)
}

/// How consistency scores become weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyMode {
    /// Pass or fail: score 1 when `D <= K`, else 0.
    Binary,
    /// Graded: score 1 when `D <= K`, else `K / D`, decaying with how far
    /// the pair overshoots its bound.
    Soft,
}

fn consistency_score(d: f64, k: f64, mode: ConsistencyMode) -> f64 {
    if d <= k {
        return 1.0;
    }
    match mode {
        ConsistencyMode::Binary => 0.0,
        // d > k here; d may be infinite, in which case the score is 0.
        ConsistencyMode::Soft => {
            if d.is_infinite() {
                0.0
            } else {
                k / d
            }
        }
    }
}

/// Symmetric pair weights from the shortcut bound:
/// `w_ij = sqrt(score(i,j) * score(j,i))`, zero diagonal.
pub fn wormhole_weights(
    d: &DissimilarityMatrix,
    threshold: &DenseMatrix,
    mode: ConsistencyMode,
) -> Result<WeightMatrix> {
    let n = d.n();
    if threshold.rows() != n || threshold.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "wormhole_weights threshold",
            expected: n,
            actual: threshold.rows().max(threshold.cols()),
        });
    }
    let mut w = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let fwd = consistency_score(d.get(i, j), threshold.get(i, j), mode);
            let bwd = consistency_score(d.get(j, i), threshold.get(j, i), mode);
            let weight = (fwd * bwd).sqrt();
            w.set(i, j, weight);
            w.set(j, i, weight);
        }
    }
    WeightMatrix::from_matrix(w)
}

/// Threshold-free variant that needs no ambient coordinates: a pair is
/// consistent when `D(i, j) <= r_i + r_j`, both radii measured *to* the
/// boundary. Anything farther must have been routed around the gap. An
/// empty boundary passes everything.
pub fn intrinsic_consistency_weights(
    d: &DissimilarityMatrix,
    boundary: &BoundarySet,
) -> Result<WeightMatrix> {
    let n = d.n();
    if boundary.is_empty() {
        return Ok(WeightMatrix::uniform(n));
    }
    let radii = nearest_boundary_distances(d, boundary);
    let mut w = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let bound = radii[i] + radii[j];
            let fwd = d.get(i, j) <= bound;
            let bwd = d.get(j, i) <= bound;
            let weight = if fwd && bwd { 1.0 } else { 0.0 };
            w.set(i, j, weight);
            w.set(j, i, weight);
        }
    }
    WeightMatrix::from_matrix(w)
}
