//! Asymmetric dissimilarities: matrices, point clouds with drift fields,
//! and directed k-nearest-neighbour graphs.
//!
//! The route from a sampled manifold to an embeddable dissimilarity matrix
//! is: build a k-NN digraph whose edge weights add a drift term to the
//! Euclidean length, then take all-pairs shortest paths. The drift term uses
//! the field at the *source* point of each edge, so the two orientations of
//! an edge differ and the resulting matrix is genuinely asymmetric.

mod graph;

pub use graph::{
    all_pairs_distances, dijkstra_single_source, is_strongly_connected, tree_dissimilarity,
    tree_graph, DirectedWeightedGraph,
};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::par;

/// Square matrix of pairwise dissimilarities `D[i][j] >= 0`.
///
/// The diagonal is exactly zero. Entries may be `+inf` (unreachable pairs);
/// consumers that cannot handle infinities reject them at their own
/// boundary. No symmetry is assumed anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    data: DenseMatrix,
}

impl DissimilarityMatrix {
    pub fn from_matrix(data: DenseMatrix) -> Result<Self> {
        if data.rows() != data.cols() {
            return Err(Error::DimensionMismatch {
                context: "DissimilarityMatrix::from_matrix",
                expected: data.rows(),
                actual: data.cols(),
            });
        }
        for i in 0..data.rows() {
            for j in 0..data.cols() {
                let v = data.get(i, j);
                if v.is_nan() || v < 0.0 {
                    return Err(Error::invalid(format!(
                        "dissimilarity [{i}][{j}] = {v} must be >= 0"
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::invalid(format!(
                        "dissimilarity diagonal [{i}][{i}] = {v} must be 0"
                    )));
                }
            }
        }
        Ok(DissimilarityMatrix { data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_matrix(DenseMatrix::from_rows(rows)?)
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

    pub fn has_infinite(&self) -> bool {
        self.data.data().iter().any(|v| v.is_infinite())
    }

    /// Largest finite entry, 0 for an all-zero matrix.
    pub fn max_finite(&self) -> f64 {
        self.data
            .data()
            .iter()
            .filter(|v| v.is_finite())
            .fold(0.0f64, |m, v| m.max(*v))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if a.is_infinite() && b.is_infinite() {
                    continue;
                }
                if (a - b).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// `(D + D^T) / 2`; an infinite entry in either direction stays infinite.
    pub fn symmetrized(&self) -> DissimilarityMatrix {
        let n = self.n();
        let mut out = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, 0.5 * (self.get(i, j) + self.get(j, i)));
            }
        }
        DissimilarityMatrix { data: out }
    }

    pub fn transposed(&self) -> DissimilarityMatrix {
        DissimilarityMatrix {
            data: self.data.transpose(),
        }
    }
}

/// Sampled points together with a unit-capped drift direction per point and
/// a global drift strength `alpha_tilde` in `[0, 1)`.
///
/// The per-point drift is a direction (norm at most 1); the strength
/// multiplies it wherever edge weights are formed, so the two are stored
/// unmixed.
#[derive(Debug, Clone)]
pub struct PointCloudWithField {
    points: DenseMatrix,
    drift: DenseMatrix,
    alpha_tilde: f64,
}

impl PointCloudWithField {
    pub fn new(points: DenseMatrix, drift: DenseMatrix, alpha_tilde: f64) -> Result<Self> {
        if drift.rows() != points.rows() || drift.cols() != points.cols() {
            return Err(Error::DimensionMismatch {
                context: "PointCloudWithField::new",
                expected: points.rows() * points.cols(),
                actual: drift.rows() * drift.cols(),
            });
        }
        if !points.is_finite() || !drift.is_finite() {
            return Err(Error::NonFinite("PointCloudWithField::new"));
        }
        if !(0.0..1.0).contains(&alpha_tilde) {
            return Err(Error::invalid(format!(
                "alpha_tilde {alpha_tilde} must lie in [0, 1)"
            )));
        }
        for i in 0..drift.rows() {
            let norm = crate::linalg::norm2(drift.row(i));
            if norm > 1.0 + 1e-9 {
                return Err(Error::invalid(format!(
                    "drift direction {i} has norm {norm} > 1"
                )));
            }
        }
        Ok(PointCloudWithField {
            points,
            drift,
            alpha_tilde,
        })
    }

    /// A cloud with zero drift everywhere.
    pub fn isotropic(points: DenseMatrix) -> Result<Self> {
        let drift = DenseMatrix::zeros(points.rows(), points.cols());
        Self::new(points, drift, 0.0)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.points.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.points.cols()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        self.points.row(i)
    }

    #[inline]
    pub fn drift_at(&self, i: usize) -> &[f64] {
        self.drift.row(i)
    }

    pub fn alpha_tilde(&self) -> f64 {
        self.alpha_tilde
    }

    pub fn points(&self) -> &DenseMatrix {
        &self.points
    }

    pub fn drift(&self) -> &DenseMatrix {
        &self.drift
    }
}

/// Builds the directed k-NN graph of a drifted point cloud.
///
/// Adjacency is the *symmetric* k-NN relation under plain Euclidean
/// distance (an unordered pair is linked when either point ranks the other
/// among its `k` nearest, ties broken by index). Each linked pair then
/// carries both directed edges with weights
///
/// ```text
/// w(i -> j) = ||x_j - x_i||_2 + alpha_tilde * drift(x_i)^T (x_j - x_i)
/// ```
///
/// so `w(i -> j) >= (1 - alpha_tilde) * ||x_j - x_i||_2`, strictly positive
/// for distinct points.
pub fn build_knn_digraph(cloud: &PointCloudWithField, k: usize) -> Result<DirectedWeightedGraph> {
    let n = cloud.n();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "k = {k} must satisfy 1 <= k < n = {n}"
        )));
    }

    let neighbour_lists: Vec<Vec<usize>> = par::map_indexed(n, |i| {
        let xi = cloud.point(i);
        let mut cand: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let xj = cloud.point(j);
                let d2: f64 = xi.iter().zip(xj).map(|(a, b)| (a - b) * (a - b)).sum();
                (d2, j)
            })
            .collect();
        cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        cand.truncate(k);
        cand.into_iter().map(|(_, j)| j).collect()
    });

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, neigh) in neighbour_lists.iter().enumerate() {
        for &j in neigh {
            pairs.push(if i < j { (i, j) } else { (j, i) });
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut edges = Vec::with_capacity(2 * pairs.len());
    for &(i, j) in &pairs {
        edges.push((i, j, edge_weight(cloud, i, j)));
        edges.push((j, i, edge_weight(cloud, j, i)));
    }
    edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    DirectedWeightedGraph::new(n, edges)
}

fn edge_weight(cloud: &PointCloudWithField, from: usize, to: usize) -> f64 {
    let xf = cloud.point(from);
    let xt = cloud.point(to);
    let drift = cloud.drift_at(from);
    let mut sq = 0.0;
    let mut along = 0.0;
    for k in 0..xf.len() {
        let d = xt[k] - xf[k];
        sq += d * d;
        along += drift[k] * d;
    }
    sq.sqrt() + cloud.alpha_tilde() * along
}
