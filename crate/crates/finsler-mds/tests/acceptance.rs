//! End-to-end checks of the advertised numerical behaviour, one test per
//! claim. Each test prints a single `criterion NN ...: PASS/FAIL` line,
//! so a full run doubles as a checklist of what this crate promises.

use std::collections::HashMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use finsler_mds::datasets::{swiss_roll, swiss_roll_with_hole};
use finsler_mds::dissimilarity::{
    all_pairs_distances, build_knn_digraph, tree_dissimilarity, tree_graph, DirectedWeightedGraph,
    DissimilarityMatrix,
};
use finsler_mds::geometry::{
    polyline_length, zermelo_to_randers, Polyline, RandersSpace, ZermeloField,
};
use finsler_mds::io::{
    write_dissimilarity_csv, write_embedding_csv, write_json, write_point_cloud_csv,
};
use finsler_mds::linalg::{top_eigenpairs, DenseMatrix};
use finsler_mds::metrics::{
    link_prediction_eval, map_score, normalized_distortion, LinkPredictionConfig,
};
use finsler_mds::solver::{
    finsler_stress, finsler_stress_trace_form, run_finsler_smacof, smacof_step, Embedding,
    InitMode, SolverConfig, WeightMatrix,
};
use finsler_mds::wormhole::{boundary_cost_factor, shortcut_threshold_matrix, BoundarySet};

fn report(num: u32, name: &str, pass: bool, details: &str) {
    println!("criterion {num:02} ({name}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {num:02} ({name}) failed: {details}");
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    cov / (va.sqrt() * vb.sqrt())
}

/// Ranks with ties sharing their average position.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            out[order[k]] = avg;
        }
        i = j + 1;
    }
    out
}

fn spearman(a: &[f64], b: &[f64]) -> f64 {
    pearson(&ranks(a), &ranks(b))
}

fn random_asymmetric_d(n: usize, rng: &mut StdRng) -> DissimilarityMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                *v = rng.gen_range(0.1..2.0);
            }
        }
    }
    DissimilarityMatrix::from_rows(rows).unwrap()
}

fn random_embedding(n: usize, m: usize, rng: &mut StdRng) -> Embedding {
    let mut coords = DenseMatrix::zeros(n, m);
    for i in 0..n {
        for c in 0..m {
            coords.set(i, c, rng.gen_range(-1.5..1.5));
        }
    }
    Embedding::new(coords).unwrap()
}

fn random_drift(m: usize, alpha: f64, rng: &mut StdRng) -> RandersSpace {
    if alpha == 0.0 {
        return RandersSpace::euclidean(m).unwrap();
    }
    let mut omega: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = dot(&omega, &omega).sqrt();
    for v in &mut omega {
        *v *= alpha / norm;
    }
    RandersSpace::new(omega).unwrap()
}

#[test]
fn criterion_01_majorization_monotonicity() {
    let start = Instant::now();
    let sizes = [10usize, 50, 200];
    let dims = [2usize, 3];
    let alphas = [0.0, 0.3, 0.5, 0.9];
    let mut checked_steps = 0usize;
    let mut worst_rise = 0.0f64;
    for instance in 0..100u64 {
        let n = sizes[instance as usize % sizes.len()];
        let m = dims[(instance as usize / sizes.len()) % dims.len()];
        let alpha = alphas[(instance as usize / (sizes.len() * dims.len())) % alphas.len()];
        let mut rng = StdRng::seed_from_u64(1000 + instance);
        let d = random_asymmetric_d(n, &mut rng);
        let space = random_drift(m, alpha, &mut rng);
        let w = WeightMatrix::uniform(n);
        let config = SolverConfig {
            max_iters: 30,
            ..SolverConfig::default()
        };
        let (_, rep) = run_finsler_smacof(&d, &w, &space, &config).unwrap();
        for pair in rep.stress_history.windows(2) {
            let rise = (pair[1] - pair[0]) / pair[0].max(f64::MIN_POSITIVE);
            worst_rise = worst_rise.max(rise);
            checked_steps += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst_rise <= 1e-9 && checked_steps > 100 && elapsed < 120.0;
    report(
        1,
        "majorization monotonicity",
        pass,
        &format!("worst relative rise {worst_rise:.3e} over {checked_steps} steps, {elapsed:.1}s"),
    );
}

/// Independent classical SMACOF step for uniform weights: the Guttman
/// transform followed by the closed-form pseudo-inverse of `n I - 1 1^T`,
/// which is column demeaning and division by `n`.
fn classical_step(x: &DenseMatrix, d: &DissimilarityMatrix, floor: f64) -> DenseMatrix {
    let n = x.rows();
    let m = x.cols();
    let mut b = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut sq = 0.0;
            for c in 0..m {
                let diff = x.get(i, c) - x.get(j, c);
                sq += diff * diff;
            }
            b.set(i, j, -d.get(i, j) / sq.sqrt().max(floor));
        }
    }
    for i in 0..n {
        let s: f64 = (0..n).filter(|&j| j != i).map(|j| -b.get(i, j)).sum();
        b.set(i, i, s);
    }
    let bx = b.matmul(x).unwrap();
    let mut out = DenseMatrix::zeros(n, m);
    for c in 0..m {
        let mean: f64 = (0..n).map(|i| bx.get(i, c)).sum::<f64>() / n as f64;
        for i in 0..n {
            out.set(i, c, (bx.get(i, c) - mean) / n as f64);
        }
    }
    out
}

#[test]
fn criterion_02_classical_reduction() {
    let floor = 1e-12;
    let config = SolverConfig {
        distance_floor: Some(floor),
        ..SolverConfig::default()
    };
    let mut worst = 0.0f64;
    for instance in 0..20u64 {
        let mut rng = StdRng::seed_from_u64(2000 + instance);
        let n = rng.gen_range(8..=25);
        let m = if instance % 2 == 0 { 2 } else { 3 };
        let pts = random_embedding(n, m, &mut rng);
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut sq = 0.0;
                    for c in 0..m {
                        let diff = pts.point(i)[c] - pts.point(j)[c];
                        sq += diff * diff;
                    }
                    rows[i][j] = sq.sqrt();
                }
            }
        }
        let d = DissimilarityMatrix::from_rows(rows).unwrap();
        let w = WeightMatrix::uniform(n);
        let space = RandersSpace::euclidean(m);
        let space = space.unwrap();

        let mut finsler = random_embedding(n, m, &mut rng).centered();
        let mut oracle = finsler.coords().clone();
        for _ in 0..50 {
            finsler = smacof_step(&finsler, &d, &w, &space, &config).unwrap();
            oracle = classical_step(&oracle, &d, floor);
            for i in 0..n {
                for c in 0..m {
                    worst = worst.max((finsler.point(i)[c] - oracle.get(i, c)).abs());
                }
            }
        }
    }
    report(
        2,
        "zero-drift reduction to classical SMACOF",
        worst <= 1e-8,
        &format!("worst per-iterate deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_03_stress_identity() {
    let floor = 1e-9;
    let mut worst = 0.0f64;
    for instance in 0..50u64 {
        let mut rng = StdRng::seed_from_u64(3000 + instance);
        let n = rng.gen_range(5..=30);
        let m = rng.gen_range(1..=4);
        let alpha = [0.0, 0.3, 0.6, 0.9][instance as usize % 4];
        let space = random_drift(m, alpha, &mut rng);
        let x = random_embedding(n, m, &mut rng);
        let d = random_asymmetric_d(n, &mut rng);
        let mut wm = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.1..1.0) };
                wm.set(i, j, v);
                wm.set(j, i, v);
            }
        }
        let w = WeightMatrix::from_matrix(wm).unwrap();
        let direct = finsler_stress(&x, &d, &w, &space).unwrap();
        let trace = finsler_stress_trace_form(&x, &d, &w, &space, floor).unwrap();
        worst = worst.max((direct - trace).abs() / direct.abs().max(1.0));
    }
    report(
        3,
        "direct stress equals trace expansion",
        worst <= 1e-8,
        &format!("worst relative gap {worst:.3e}"),
    );
}

#[test]
fn criterion_04_planar_data_embeds_flat() {
    let mut worst_stress_ratio = 0.0f64;
    let mut worst_spread_ratio = 0.0f64;
    for instance in 0..10u64 {
        let mut rng = StdRng::seed_from_u64(4000 + instance);
        let n = rng.gen_range(15..=100);
        let pts = random_embedding(n, 2, &mut rng);
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let dx = pts.point(i)[0] - pts.point(j)[0];
                    let dy = pts.point(i)[1] - pts.point(j)[1];
                    rows[i][j] = (dx * dx + dy * dy).sqrt();
                }
            }
        }
        let d = DissimilarityMatrix::from_rows(rows).unwrap();
        let w = WeightMatrix::uniform(n);
        let space = RandersSpace::new(vec![0.0, 0.0, 0.5]).unwrap();
        let config = SolverConfig {
            init: InitMode::SymmetricPlusOne,
            ..SolverConfig::default()
        };
        let (x, rep) = run_finsler_smacof(&d, &w, &space, &config).unwrap();

        let mut scale = 0.0;
        for i in 0..n {
            for j in 0..n {
                scale += d.get(i, j) * d.get(i, j);
            }
        }
        worst_stress_ratio = worst_stress_ratio.max(rep.final_stress / scale);
        let omega_coord: Vec<f64> = (0..n).map(|i| x.point(i)[2]).collect();
        let spread = omega_coord.iter().cloned().fold(f64::MIN, f64::max)
            - omega_coord.iter().cloned().fold(f64::MAX, f64::min);
        worst_spread_ratio = worst_spread_ratio.max(spread / x.diameter());
    }
    let pass = worst_stress_ratio <= 1e-6 && worst_spread_ratio <= 1e-4;
    report(
        4,
        "symmetric planar data stays in the drift-orthogonal plane",
        pass,
        &format!(
            "worst normalized stress {worst_stress_ratio:.3e}, worst drift-axis spread ratio {worst_spread_ratio:.3e}"
        ),
    );
}

#[test]
fn criterion_05_metric_properties() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..2500 {
        let m = rng.gen_range(2..=5);
        let space = random_drift(m, rng.gen_range(0.05..0.95), &mut rng);

        // Positive homogeneity.
        let u: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let lambda = rng.gen_range(0.0..3.0);
        let scaled: Vec<f64> = u.iter().map(|v| lambda * v).collect();
        let fu = space.metric(&u).unwrap();
        let gap = (space.metric(&scaled).unwrap() - lambda * fu).abs() / (lambda * fu).max(1.0);
        worst = worst.max(gap);

        // Triangle inequality on tangent vectors.
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let sum: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let rhs = fu + space.metric(&v).unwrap();
        worst = worst.max((space.metric(&sum).unwrap() - rhs) / rhs.max(1.0));

        // Round trip exceeds the symmetric part by exactly twice the drift.
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let y: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let sq: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        let round = space.distance(&x, &y).unwrap() + space.distance(&y, &x).unwrap();
        worst = worst.max((round - 2.0 * sq.sqrt()).abs() / round.max(1.0));

        // No polyline beats the straight segment.
        let mut vertices = vec![x.clone()];
        for _ in 0..rng.gen_range(1..=4) {
            vertices.push((0..m).map(|_| rng.gen_range(-3.0..3.0)).collect());
        }
        vertices.push(y.clone());
        let length = polyline_length(&space, &Polyline::new(vertices).unwrap()).unwrap();
        let direct = space.distance(&x, &y).unwrap();
        worst = worst.max((direct - length) / direct.max(1.0));
    }
    report(
        5,
        "homogeneity, triangle, round-trip identity, straight geodesics",
        worst <= 1e-12,
        &format!("worst violation {worst:.3e} over 10000 checks"),
    );
}

fn floyd_warshall(graph: &DirectedWeightedGraph) -> Vec<Vec<f64>> {
    let n = graph.n();
    let mut dist = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in graph.edges() {
        if w < dist[u][v] {
            dist[u][v] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

#[test]
fn criterion_06_shortest_paths_match_floyd_warshall() {
    let mut mismatches = 0usize;
    for instance in 0..200u64 {
        let mut rng = StdRng::seed_from_u64(6000 + instance);
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    // Dyadic weights keep every path sum exact, so the two
                    // algorithms must agree bit for bit.
                    edges.push((u, v, rng.gen_range(1..=128) as f64 / 64.0));
                }
            }
        }
        let graph = DirectedWeightedGraph::new(n, edges).unwrap();
        let fast = all_pairs_distances(&graph);
        let oracle = floyd_warshall(&graph);
        for i in 0..n {
            for j in 0..n {
                if fast.get(i, j) != oracle[i][j] {
                    mismatches += 1;
                }
            }
        }
    }
    report(
        6,
        "all-pairs distances equal Floyd-Warshall",
        mismatches == 0,
        &format!("{mismatches} mismatching entries"),
    );
}

#[test]
fn criterion_07_swiss_roll_flattens() {
    let start = Instant::now();
    let roll = swiss_roll(500, 0.3, 42).unwrap();
    let graph = build_knn_digraph(&roll.cloud, 10).unwrap();
    let d = all_pairs_distances(&graph);
    assert!(!d.has_infinite(), "kNN digraph must be strongly connected");
    let w = WeightMatrix::uniform(d.n());
    let space = RandersSpace::axis_aligned(3, 0.5).unwrap();
    let (x, _) = run_finsler_smacof(&d, &w, &space, &SolverConfig::default()).unwrap();

    let n = x.n();
    let mut scatter = DenseMatrix::zeros(3, 3);
    for i in 0..n {
        let p = x.point(i);
        for a in 0..3 {
            for b in 0..3 {
                scatter.set(a, b, scatter.get(a, b) + p[a] * p[b]);
            }
        }
    }
    let (evals, _) = top_eigenpairs(&scatter, 3).unwrap();
    let plane_rms = (evals[2].max(0.0) / n as f64).sqrt();
    let diameter = x.diameter();

    let omega_coord: Vec<f64> = (0..n).map(|i| x.point(i)[2]).collect();
    let corr = pearson(&omega_coord, &roll.arc_length);
    let elapsed = start.elapsed().as_secs_f64();

    let pass = plane_rms <= 0.05 * diameter && corr.abs() >= 0.95 && elapsed < 300.0;
    report(
        7,
        "asymmetric swiss roll flattens with drift tracking arc length",
        pass,
        &format!(
            "plane rms {plane_rms:.3} vs diameter {diameter:.3}, |pearson| {:.4}, {elapsed:.1}s",
            corr.abs()
        ),
    );
}

#[test]
fn criterion_08_tree_depth_maps_to_drift_axis() {
    let (_, depths) = tree_graph(7, 0.5, 1.5, 0.1).unwrap();
    let d = tree_dissimilarity(7, 0.5, 1.5, 0.1).unwrap();
    let w = WeightMatrix::uniform(d.n());
    let space = RandersSpace::axis_aligned(2, 0.5).unwrap();
    let (x, _) = run_finsler_smacof(&d, &w, &space, &SolverConfig::default()).unwrap();
    let depth_f: Vec<f64> = depths.iter().map(|&v| v as f64).collect();
    let omega_coord: Vec<f64> = (0..x.n()).map(|i| x.point(i)[1]).collect();
    let rho = spearman(&depth_f, &omega_coord);
    report(
        8,
        "tree depth descends along the drift axis",
        rho <= -0.9,
        &format!("spearman(depth, drift coordinate) = {rho:.4}"),
    );
}

#[test]
fn criterion_09_wormhole_passes_only_consistent_pairs() {
    let n_draw = 800;
    let alpha_tilde = 0.5;
    let seed = 11;
    let full = swiss_roll(n_draw, alpha_tilde, seed).unwrap();
    let hole = swiss_roll_with_hole(n_draw, alpha_tilde, seed).unwrap();

    // The hole generator redraws the same candidates, so retained points
    // can be matched back to full-sample indices bit for bit.
    let mut index_of: HashMap<(u64, u64), usize> = HashMap::new();
    for (i, p) in full.params.iter().enumerate() {
        index_of.insert((p[0].to_bits(), p[1].to_bits()), i);
    }
    let kept: Vec<usize> = hole
        .params
        .iter()
        .map(|p| index_of[&(p[0].to_bits(), p[1].to_bits())])
        .collect();

    let d_full = all_pairs_distances(&build_knn_digraph(&full.cloud, 15).unwrap());
    let d_partial = all_pairs_distances(&build_knn_digraph(&hole.cloud, 15).unwrap());
    assert!(!d_full.has_infinite());
    assert!(!d_partial.has_infinite());

    // Discretization scale: kNN-graph distances on the hole-free sample
    // against the exact unrolled-strip distances.
    let mut errs = Vec::new();
    for i in 0..n_draw {
        for j in 0..n_draw {
            if i == j {
                continue;
            }
            let ds = full.arc_length[j] - full.arc_length[i];
            let dw = full.params[j][1] - full.params[i][1];
            let exact = (ds * ds + dw * dw).sqrt() + alpha_tilde * ds;
            errs.push((d_full.get(i, j) - exact).abs());
        }
    }
    errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q99 = errs[((errs.len() as f64 * 0.99).ceil() as usize - 1).min(errs.len() - 1)];

    let boundary = BoundarySet::from_mask(&hole.boundary);
    assert!(!boundary.is_empty());
    let cf = boundary_cost_factor(alpha_tilde).unwrap();
    let k = shortcut_threshold_matrix(&d_partial, hole.cloud.points(), &boundary, cf).unwrap();

    let nk = d_partial.n();
    let mut passed = 0usize;
    let mut total = 0usize;
    let mut violations = 0usize;
    let mut worst_gap = 0.0f64;
    for a in 0..nk {
        for b in 0..nk {
            if a == b {
                continue;
            }
            total += 1;
            if d_partial.get(a, b) <= k.get(a, b) {
                passed += 1;
                let gap = (d_partial.get(a, b) - d_full.get(kept[a], kept[b])).abs();
                worst_gap = worst_gap.max(gap);
                if gap > q99 {
                    violations += 1;
                }
            }
        }
    }
    let fraction = passed as f64 / total as f64;
    let pass = violations == 0 && fraction >= 0.5;
    report(
        9,
        "wormhole bound never passes a hole-distorted pair",
        pass,
        &format!(
            "{violations} violations, worst passed-pair gap {worst_gap:.3e} vs q99 {q99:.3e}, pass fraction {fraction:.3}"
        ),
    );
}

#[test]
fn criterion_10_zermelo_unit_time_identity() {
    let mut rng = StdRng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let m = rng.gen_range(2..=4);
        let mut a = DenseMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                a.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        let mut spd = a.transpose().matmul(&a).unwrap();
        for i in 0..m {
            spd.set(i, i, spd.get(i, i) + 0.3);
        }
        let mut v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mv = spd.mat_vec(&v).unwrap();
        let vnorm = dot(&v, &mv).sqrt();
        let target = rng.gen_range(0.0..0.9);
        for x in &mut v {
            *x *= target / vnorm;
        }
        let field = ZermeloField::new(spd.clone(), v.clone()).unwrap();
        let randers = zermelo_to_randers(&field).unwrap();

        let u: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
        let f = randers.metric(&u).unwrap();
        let z: Vec<f64> = u.iter().zip(&v).map(|(ui, vi)| ui / f - vi).collect();
        let mz = spd.mat_vec(&z).unwrap();
        worst = worst.max((dot(&z, &mz).sqrt() - 1.0).abs());
    }

    // Zero current returns the sea metric untouched.
    let m = DenseMatrix::from_rows(vec![vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap();
    let field = ZermeloField::new(m.clone(), vec![0.0, 0.0]).unwrap();
    let randers = zermelo_to_randers(&field).unwrap();
    let mut identity_exact = randers.omega().iter().all(|&x| x == 0.0);
    for i in 0..2 {
        for j in 0..2 {
            identity_exact &= randers.m_tensor().get(i, j) == m.get(i, j);
        }
    }

    let pass = worst <= 1e-10 && identity_exact;
    report(
        10,
        "Zermelo conversion satisfies the unit-time identity",
        pass,
        &format!("worst residual {worst:.3e}, zero-current identity exact: {identity_exact}"),
    );
}

#[test]
fn criterion_11_direction_signal_needs_drift() {
    let finsler = RandersSpace::axis_aligned(2, 0.5).unwrap();
    let euclidean = RandersSpace::euclidean(2).unwrap();
    let solver = SolverConfig::default();
    let mut finsler_aucs = Vec::new();
    let mut euclid_aucs = Vec::new();
    for instance in 0..20u64 {
        let depth = if instance % 2 == 0 { 4 } else { 5 };
        let (graph, _) = tree_graph(depth, 0.5, 1.5, 0.1).unwrap();
        let config = LinkPredictionConfig {
            seed: 1100 + instance,
            ..LinkPredictionConfig::default()
        };
        let f = link_prediction_eval(&graph, &finsler, &solver, &config).unwrap();
        let e = link_prediction_eval(&graph, &euclidean, &solver, &config).unwrap();
        finsler_aucs.push(f.direction_auc);
        euclid_aucs.push(e.direction_auc);
    }
    let f_mean = finsler_aucs.iter().sum::<f64>() / finsler_aucs.len() as f64;
    let f_min = finsler_aucs.iter().cloned().fold(f64::MAX, f64::min);
    let e_worst = euclid_aucs
        .iter()
        .map(|a| (a - 0.5).abs())
        .fold(0.0f64, f64::max);
    let pass = f_min >= 0.8 && e_worst <= 0.1;
    report(
        11,
        "drifted embeddings predict edge direction, Euclidean cannot",
        pass,
        &format!("finsler auc mean {f_mean:.3} min {f_min:.3}, euclidean worst |auc-0.5| {e_worst:.3}"),
    );
}

#[test]
fn criterion_12_reruns_are_byte_identical() {
    fn pipeline(dir: &std::path::Path) {
        let roll = swiss_roll(150, 0.3, 99).unwrap();
        write_point_cloud_csv(dir.join("points.csv"), &roll.cloud).unwrap();
        let graph = build_knn_digraph(&roll.cloud, 8).unwrap();
        let d = all_pairs_distances(&graph);
        write_dissimilarity_csv(dir.join("dissimilarity.csv"), &d).unwrap();
        let w = WeightMatrix::uniform(d.n());
        let space = RandersSpace::axis_aligned(3, 0.5).unwrap();
        let config = SolverConfig {
            max_iters: 120,
            ..SolverConfig::default()
        };
        let (x, rep) = run_finsler_smacof(&d, &w, &space, &config).unwrap();
        write_embedding_csv(dir.join("embedding.csv"), &x).unwrap();
        write_json(dir.join("report.json"), &rep).unwrap();
        let summary = serde_json::json!({
            "distortion": normalized_distortion(&x, &d, &space).unwrap(),
            "map": map_score(&x, &space, &graph).unwrap(),
        });
        write_json(dir.join("metrics.json"), &summary).unwrap();
    }

    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    pipeline(dir_a.path());
    pipeline(dir_b.path());
    let mut all_equal = true;
    for name in ["points.csv", "dissimilarity.csv", "embedding.csv", "report.json", "metrics.json"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        all_equal &= a == b;
    }

    let (graph, _) = tree_graph(4, 0.5, 1.5, 0.1).unwrap();
    let space = RandersSpace::axis_aligned(2, 0.5).unwrap();
    let lp = LinkPredictionConfig::default();
    let o1 = link_prediction_eval(&graph, &space, &SolverConfig::default(), &lp).unwrap();
    let o2 = link_prediction_eval(&graph, &space, &SolverConfig::default(), &lp).unwrap();
    let lp_equal = o1.existence_auc.to_bits() == o2.existence_auc.to_bits()
        && o1.direction_auc.to_bits() == o2.direction_auc.to_bits();

    report(
        12,
        "fixed-seed pipelines reproduce byte for byte",
        all_equal && lp_equal,
        &format!("file bytes equal: {all_equal}, link-prediction bits equal: {lp_equal}"),
    );
}
