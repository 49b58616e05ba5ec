//! Starting configurations for the stress solvers.

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::geometry::RandersSpace;
use crate::linalg::{dot, top_eigenpairs, DenseMatrix};
use crate::solver::{Embedding, InitMode, SolverConfig};

/// Classical (Torgerson) MDS on the symmetrized data.
///
/// Double-centers the squared dissimilarities into a Gram matrix, takes the
/// top `m` eigenpairs, and scales eigenvectors by the square roots of the
/// clamped eigenvalues. The result is centered by construction. Requires a
/// fully finite matrix; mask or repair infinite entries first.
pub fn classical_mds_init(d: &DissimilarityMatrix, m: usize) -> Result<Embedding> {
    let n = d.n();
    if m == 0 {
        return Err(Error::invalid("target dimension must be >= 1"));
    }
    if m > n {
        return Err(Error::invalid(format!(
            "target dimension {m} exceeds the number of points {n}"
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if !d.get(i, j).is_finite() {
                return Err(Error::InfiniteDissimilarity { i, j });
            }
        }
    }
    let sym = d.symmetrized();
    // G = -1/2 J (D . D) J, via explicit row/column/grand means.
    let mut sq = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = sym.get(i, j);
            sq.set(i, j, v * v);
        }
    }
    let mut row_mean = vec![0.0; n];
    let mut grand = 0.0;
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            acc += sq.get(i, j);
        }
        row_mean[i] = acc / n as f64;
        grand += acc;
    }
    grand /= (n * n) as f64;
    let mut gram = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(
                i,
                j,
                -0.5 * (sq.get(i, j) - row_mean[i] - row_mean[j] + grand),
            );
        }
    }
    let (evals, evecs) = top_eigenpairs(&gram, m)?;
    let mut coords = DenseMatrix::zeros(n, m);
    for (c, &lambda) in evals.iter().enumerate() {
        let scale = lambda.max(0.0).sqrt();
        for i in 0..n {
            coords.set(i, c, scale * evecs.get(i, c));
        }
    }
    // A rank-deficient Gram matrix can promote its null direction (the
    // constant vector) into the selected pairs at a vanishing eigenvalue;
    // centering removes the meaningless offset that leaves behind.
    Ok(Embedding::new(coords)?.centered())
}

/// Deterministic orthonormal basis of the hyperplane orthogonal to
/// `direction` (`m-1` columns of length `m`), by Gram-Schmidt over the
/// standard basis.
fn orthogonal_complement_basis(direction: &[f64]) -> Result<Vec<Vec<f64>>> {
    let m = direction.len();
    let norm = dot(direction, direction).sqrt();
    if norm == 0.0 {
        return Err(Error::invalid(
            "cannot build a drift-orthogonal basis for zero drift".to_string(),
        ));
    }
    let unit: Vec<f64> = direction.iter().map(|v| v / norm).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m - 1);
    for axis in 0..m {
        if basis.len() == m - 1 {
            break;
        }
        let mut cand = vec![0.0; m];
        cand[axis] = 1.0;
        let proj = dot(&cand, &unit);
        for (c, u) in cand.iter_mut().zip(&unit) {
            *c -= proj * u;
        }
        for prev in &basis {
            let proj = dot(&cand, prev);
            for (c, p) in cand.iter_mut().zip(prev) {
                *c -= proj * p;
            }
        }
        let len = dot(&cand, &cand).sqrt();
        if len < 1e-9 {
            continue;
        }
        for c in cand.iter_mut() {
            *c /= len;
        }
        basis.push(cand);
    }
    if basis.len() != m - 1 {
        return Err(Error::invalid(
            "failed to span the drift-orthogonal hyperplane".to_string(),
        ));
    }
    Ok(basis)
}

/// Classical MDS into the hyperplane orthogonal to the drift covector:
/// embeds in `m - 1` dimensions, then rotates those coordinates onto an
/// orthonormal basis of the hyperplane so the drift coordinate starts at
/// zero for every point.
fn symmetric_plus_one_init(d: &DissimilarityMatrix, space: &RandersSpace) -> Result<Embedding> {
    let m = space.dim();
    if m < 2 {
        return Err(Error::invalid(
            "drift-orthogonal initialization needs dimension >= 2".to_string(),
        ));
    }
    if space.alpha() == 0.0 {
        return Err(Error::invalid(
            "drift-orthogonal initialization needs a nonzero drift".to_string(),
        ));
    }
    let flat = classical_mds_init(d, m - 1)?;
    let basis = orthogonal_complement_basis(space.omega())?;
    let n = d.n();
    let mut coords = DenseMatrix::zeros(n, m);
    for i in 0..n {
        for (k, b) in basis.iter().enumerate() {
            let coeff = flat.point(i)[k];
            for (c, bc) in b.iter().enumerate() {
                coords.set(i, c, coords.get(i, c) + coeff * bc);
            }
        }
    }
    Embedding::new(coords)
}

/// Infinite entries replaced by the largest finite one, so spectral
/// initialization stays usable on partially observed data where those pairs
/// carry zero weight.
fn repair_infinite(d: &DissimilarityMatrix) -> DissimilarityMatrix {
    if !d.has_infinite() {
        return d.clone();
    }
    let cap = d.max_finite();
    let n = d.n();
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = d.get(i, j);
            out.set(i, j, if v.is_finite() { v } else { cap });
        }
    }
    DissimilarityMatrix::from_matrix(out).expect("repaired matrix stays valid")
}

pub(crate) fn initial_embedding(
    d: &DissimilarityMatrix,
    space: &RandersSpace,
    config: &SolverConfig,
) -> Result<Embedding> {
    match &config.init {
        InitMode::ClassicalMds => classical_mds_init(&repair_infinite(d), space.dim()),
        InitMode::SymmetricPlusOne => symmetric_plus_one_init(&repair_infinite(d), space),
        InitMode::Given(x) => {
            if x.n() != d.n() || x.dim() != space.dim() {
                return Err(Error::DimensionMismatch {
                    context: "given initial embedding",
                    expected: d.n() * space.dim(),
                    actual: x.n() * x.dim(),
                });
            }
            Ok(x.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 2-D orthogonal Procrustes oracle: best rotation-or-reflection plus
    // translation aligning `a` to `b`, from the closed form on the 2x2
    // cross-covariance. Returns the residual RMS.
    fn procrustes_2d_rms(a: &Embedding, b: &Embedding) -> f64 {
        assert_eq!(a.dim(), 2);
        let n = a.n() as f64;
        let ac = a.centered();
        let bc = b.centered();
        // Cross-covariance H = ac^T bc.
        let mut h = [[0.0f64; 2]; 2];
        for i in 0..a.n() {
            for r in 0..2 {
                for c in 0..2 {
                    h[r][c] += ac.point(i)[r] * bc.point(i)[c];
                }
            }
        }
        let best = [false, true]
            .into_iter()
            .map(|reflect| {
                // With reflection, flip the second column of ac first.
                let hh = if reflect {
                    [[h[0][0], h[0][1]], [-h[1][0], -h[1][1]]]
                } else {
                    h
                };
                // Optimal rotation angle maximizes tr(R hh):
                // tan(theta) = (hh[0][1] - hh[1][0]) / (hh[0][0] + hh[1][1]).
                let theta = (hh[0][1] - hh[1][0]).atan2(hh[0][0] + hh[1][1]);
                let (s, c) = theta.sin_cos();
                let mut ss = 0.0;
                for i in 0..a.n() {
                    let p = ac.point(i);
                    let (px, py) = if reflect { (p[0], -p[1]) } else { (p[0], p[1]) };
                    let rx = c * px - s * py;
                    let ry = s * px + c * py;
                    let q = bc.point(i);
                    ss += (rx - q[0]).powi(2) + (ry - q[1]).powi(2);
                }
                ss
            })
            .fold(f64::INFINITY, f64::min);
        (best / n).sqrt()
    }

    fn euclidean_dissimilarity(points: &[[f64; 2]]) -> DissimilarityMatrix {
        let n = points.len();
        let mut d = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let dx = points[i][0] - points[j][0];
                    let dy = points[i][1] - points[j][1];
                    d.set(i, j, (dx * dx + dy * dy).sqrt());
                }
            }
        }
        DissimilarityMatrix::from_matrix(d).unwrap()
    }

    #[test]
    fn recovers_planar_configuration_up_to_rigid_motion() {
        let points = [
            [0.0, 0.0],
            [2.0, 0.5],
            [1.0, 3.0],
            [-1.5, 2.0],
            [0.5, -2.0],
            [3.0, 2.5],
        ];
        let d = euclidean_dissimilarity(&points);
        let x = classical_mds_init(&d, 2).unwrap();
        let truth = Embedding::new(
            DenseMatrix::from_rows(points.iter().map(|p| p.to_vec()).collect()).unwrap(),
        )
        .unwrap();
        assert!(procrustes_2d_rms(&x, &truth) < 1e-8);
    }

    #[test]
    fn asymmetric_input_uses_the_symmetrized_matrix() {
        let d = DissimilarityMatrix::from_rows(vec![
            vec![0.0, 2.0, 1.0],
            vec![1.0, 0.0, 2.5],
            vec![2.0, 0.5, 0.0],
        ])
        .unwrap();
        let a = classical_mds_init(&d, 2).unwrap();
        let b = classical_mds_init(&d.symmetrized(), 2).unwrap();
        for i in 0..3 {
            for c in 0..2 {
                assert!((a.point(i)[c] - b.point(i)[c]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn output_is_centered() {
        let d = DissimilarityMatrix::from_rows(vec![
            vec![0.0, 1.0, 4.0],
            vec![1.0, 0.0, 2.0],
            vec![4.0, 2.0, 0.0],
        ])
        .unwrap();
        let x = classical_mds_init(&d, 2).unwrap();
        for c in 0..2 {
            let mean: f64 = (0..3).map(|i| x.point(i)[c]).sum::<f64>() / 3.0;
            assert!(mean.abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_bounds() {
        let d = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(classical_mds_init(&d, 0).is_err());
        assert!(classical_mds_init(&d, 3).is_err());
        assert!(classical_mds_init(&d, 2).is_ok());
    }

    #[test]
    fn infinite_entries_are_rejected_without_repair() {
        let d = DissimilarityMatrix::from_rows(vec![
            vec![0.0, f64::INFINITY],
            vec![1.0, 0.0],
        ])
        .unwrap();
        assert!(matches!(
            classical_mds_init(&d, 1),
            Err(Error::InfiniteDissimilarity { .. })
        ));
        let repaired = repair_infinite(&d);
        assert_eq!(repaired.get(0, 1), 1.0);
        assert!(classical_mds_init(&repaired, 1).is_ok());
    }

    #[test]
    fn complement_basis_is_orthonormal_and_orthogonal_to_direction() {
        for dir in [vec![0.0, 0.0, 0.5], vec![0.3, -0.2, 0.1], vec![1.0, 0.0, 0.0]] {
            let basis = orthogonal_complement_basis(&dir).unwrap();
            assert_eq!(basis.len(), 2);
            for (i, b) in basis.iter().enumerate() {
                assert!((dot(b, b) - 1.0).abs() < 1e-12);
                assert!(dot(b, &dir).abs() < 1e-12);
                for a in &basis[..i] {
                    assert!(dot(a, b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn drift_orthogonal_init_zeroes_the_drift_coordinate() {
        let points = [[0.0, 0.0], [1.0, 0.2], [0.3, 1.5], [-1.0, 0.8]];
        let d = euclidean_dissimilarity(&points);
        let space = RandersSpace::new(vec![0.0, 0.0, 0.6]).unwrap();
        let cfg = SolverConfig {
            init: InitMode::SymmetricPlusOne,
            ..SolverConfig::default()
        };
        let x = initial_embedding(&d, &space, &cfg).unwrap();
        assert_eq!(x.dim(), 3);
        for i in 0..4 {
            assert!(dot(x.point(i), space.omega()).abs() < 1e-12);
        }
        // The in-plane geometry still matches the data.
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let dist: f64 = x
                    .point(i)
                    .iter()
                    .zip(x.point(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                worst = worst.max((dist - d.get(i, j)).abs());
            }
        }
        assert!(worst < 1e-8);
    }

    #[test]
    fn drift_orthogonal_init_requires_room_and_drift() {
        let d = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let cfg = SolverConfig {
            init: InitMode::SymmetricPlusOne,
            ..SolverConfig::default()
        };
        let line = RandersSpace::new(vec![0.5]).unwrap();
        assert!(initial_embedding(&d, &line, &cfg).is_err());
        let flat = RandersSpace::euclidean(2).unwrap();
        assert!(initial_embedding(&d, &flat, &cfg).is_err());
    }

    #[test]
    fn given_init_is_shape_checked_and_passed_through() {
        let d = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let space = RandersSpace::euclidean(2).unwrap();
        let x0 = Embedding::new(
            DenseMatrix::from_rows(vec![vec![0.0, 0.0], vec![1.0, 2.0]]).unwrap(),
        )
        .unwrap();
        let cfg = SolverConfig {
            init: InitMode::Given(x0.clone()),
            ..SolverConfig::default()
        };
        assert_eq!(initial_embedding(&d, &space, &cfg).unwrap(), x0);
        let bad = RandersSpace::euclidean(3).unwrap();
        assert!(initial_embedding(&d, &bad, &cfg).is_err());
    }
}
