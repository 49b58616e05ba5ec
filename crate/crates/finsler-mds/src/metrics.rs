//! Embedding quality measures and the link prediction benchmark.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dissimilarity::{
    all_pairs_distances, is_strongly_connected, DirectedWeightedGraph, DissimilarityMatrix,
};
use crate::error::{Error, Result};
use crate::geometry::RandersSpace;
use crate::linalg::DenseMatrix;
use crate::solver::{
    finsler_stress, run_finsler_smacof, Embedding, SolveReport, SolverConfig, WeightMatrix,
};

/// Squared-error distortion relative to the target scale:
/// `sum over ordered pairs of (d(x_i, x_j) - D_ij)^2 / D_ij`, divided by
/// the number of unordered pairs. Pairs with `D_ij = 0` contribute
/// nothing; infinite targets are rejected.
pub fn normalized_distortion(
    x: &Embedding,
    d: &DissimilarityMatrix,
    space: &RandersSpace,
) -> Result<f64> {
    let n = x.n();
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            context: "normalized_distortion",
            expected: n,
            actual: d.n(),
        });
    }
    if x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            context: "normalized_distortion dimension",
            expected: space.dim(),
            actual: x.dim(),
        });
    }
    if n < 2 {
        return Err(Error::invalid("need at least two points"));
    }
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dij = d.get(i, j);
            if dij.is_infinite() {
                return Err(Error::InfiniteDissimilarity { i, j });
            }
            if dij == 0.0 {
                continue;
            }
            let emb = space.distance_unchecked(x.point(i), x.point(j));
            acc += (emb - dij) * (emb - dij) / dij;
        }
    }
    Ok(acc / (n * (n - 1) / 2) as f64)
}

/// Mean average precision of out-neighbour retrieval: for each node with
/// outgoing edges, every other node is ranked by embedded distance from it
/// (ties broken by index) and average precision of recovering its true
/// out-neighbours is computed. Queries without outgoing edges are skipped.
pub fn map_score(
    x: &Embedding,
    space: &RandersSpace,
    graph: &DirectedWeightedGraph,
) -> Result<f64> {
    let n = x.n();
    if graph.n() != n {
        return Err(Error::DimensionMismatch {
            context: "map_score",
            expected: n,
            actual: graph.n(),
        });
    }
    if x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            context: "map_score dimension",
            expected: space.dim(),
            actual: x.dim(),
        });
    }
    let mut total = 0.0;
    let mut queries = 0usize;
    for i in 0..n {
        let relevant: HashSet<usize> = graph.out_neighbours(i).iter().map(|&(j, _)| j).collect();
        if relevant.is_empty() {
            continue;
        }
        let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        order.sort_by(|&a, &b| {
            let da = space.distance_unchecked(x.point(i), x.point(a));
            let db = space.distance_unchecked(x.point(i), x.point(b));
            da.total_cmp(&db).then(a.cmp(&b))
        });
        let mut hits = 0usize;
        let mut ap = 0.0;
        for (rank0, &j) in order.iter().enumerate() {
            if relevant.contains(&j) {
                hits += 1;
                ap += hits as f64 / (rank0 + 1) as f64;
            }
        }
        total += ap / relevant.len() as f64;
        queries += 1;
    }
    if queries == 0 {
        return Err(Error::invalid("no node has outgoing edges"));
    }
    Ok(total / queries as f64)
}

/// Edge probability from an embedded distance: `1 / (1 + exp((d^2 - r) / t))`.
/// Distance `r.sqrt()` maps to probability one half; `t` controls the
/// sharpness and must be positive.
pub fn fermi_dirac_probability(distance: f64, r: f64, t: f64) -> f64 {
    assert!(t > 0.0, "temperature must be positive");
    1.0 / (1.0 + ((distance * distance - r) / t).exp())
}

/// Area under the ROC curve by the Mann-Whitney statistic with midranks,
/// so tied scores count one half. Scores orient so that larger means more
/// likely positive. Needs both classes present.
pub fn roc_auc(samples: &[(f64, bool)]) -> Result<f64> {
    let pos = samples.iter().filter(|(_, l)| *l).count();
    let neg = samples.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass);
    }
    if samples.iter().any(|(s, _)| s.is_nan()) {
        return Err(Error::NonFinite("roc_auc scores"));
    }
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].0.total_cmp(&samples[b].0).then(a.cmp(&b)));
    let mut rank_sum_pos = 0.0;
    let mut start = 0usize;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && samples[order[end + 1]].0 == samples[order[start]].0 {
            end += 1;
        }
        // 1-based ranks start..=end share the midrank.
        let midrank = (start + end) as f64 / 2.0 + 1.0;
        for &idx in &order[start..=end] {
            if samples[idx].1 {
                rank_sum_pos += midrank;
            }
        }
        start = end + 1;
    }
    let p = pos as f64;
    Ok((rank_sum_pos - p * (p + 1.0) / 2.0) / (p * neg as f64))
}

#[derive(Debug, Clone)]
pub struct LinkPredictionConfig {
    pub train_fraction: f64,
    pub val_fraction: f64,
    /// Drives the split shuffle, the negative sampling, and the direction
    /// coin flips.
    pub seed: u64,
    /// Fermi-Dirac radius for existence scores. ROC area is invariant
    /// under monotone maps, so these two only matter for calibrated
    /// probabilities, not for the reported AUC.
    pub fermi_r: f64,
    pub fermi_t: f64,
    /// How often the split may be redrawn when the training digraph comes
    /// out not strongly connected.
    pub max_reseeds: u32,
}

impl Default for LinkPredictionConfig {
    fn default() -> Self {
        LinkPredictionConfig {
            train_fraction: 0.8,
            val_fraction: 0.15,
            seed: 0,
            fermi_r: 1.0,
            fermi_t: 1.0,
            max_reseeds: 20,
        }
    }
}

/// Edge split at the level of unordered pairs: both directions of a pair
/// always land on the same side, so the training graph never leaks half of
/// a held-out pair.
#[derive(Debug, Clone)]
pub struct LinkPredictionSplit {
    /// The surviving directed edges, strongly connected.
    pub train: DirectedWeightedGraph,
    pub train_pairs: Vec<(usize, usize)>,
    pub val_pairs: Vec<(usize, usize)>,
    pub test_pairs: Vec<(usize, usize)>,
    /// How many redraws connectivity needed.
    pub reseeds: u32,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        items.swap(i, rng.gen_range(0..=i));
    }
}

/// Splits the graph's unordered pairs into train, validation, and test.
///
/// A spanning subset of pairs (found greedily over a seeded shuffle) is
/// forced into train so the training digraph has a chance of staying
/// strongly connected; the rest fill train up to `train_fraction`, then
/// validation, then test. If the training digraph is not strongly
/// connected the whole split is redrawn with a fresh shuffle, up to
/// `max_reseeds` times.
pub fn link_prediction_split(
    graph: &DirectedWeightedGraph,
    config: &LinkPredictionConfig,
) -> Result<LinkPredictionSplit> {
    if !(config.train_fraction > 0.0
        && config.val_fraction >= 0.0
        && config.train_fraction + config.val_fraction < 1.0)
    {
        return Err(Error::invalid(format!(
            "invalid split fractions {} / {}",
            config.train_fraction, config.val_fraction
        )));
    }
    let n = graph.n();
    let mut pair_set: Vec<(usize, usize)> = {
        let mut set = HashSet::new();
        for &(u, v, _) in graph.edges() {
            set.insert((u.min(v), u.max(v)));
        }
        let mut pairs: Vec<_> = set.into_iter().collect();
        pairs.sort_unstable();
        pairs
    };
    if pair_set.len() < 3 {
        return Err(Error::invalid(
            "need at least three unordered pairs to split".to_string(),
        ));
    }
    let total = pair_set.len();
    let train_target = ((config.train_fraction * total as f64).ceil() as usize).min(total);
    let val_target = (config.val_fraction * total as f64).round() as usize;

    for attempt in 0..=config.max_reseeds {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(attempt as u64));
        shuffle(&mut pair_set, &mut rng);
        let mut uf = UnionFind::new(n);
        let mut train_pairs = Vec::new();
        let mut rest = Vec::new();
        for &(a, b) in &pair_set {
            if uf.union(a, b) {
                train_pairs.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        for &(a, b) in &rest {
            if train_pairs.len() >= train_target {
                break;
            }
            train_pairs.push((a, b));
        }
        let held: Vec<(usize, usize)> = rest
            .into_iter()
            .filter(|p| !train_pairs.contains(p))
            .collect();
        let val_count = val_target.min(held.len());
        let val_pairs: Vec<_> = held[..val_count].to_vec();
        let test_pairs: Vec<_> = held[val_count..].to_vec();

        let train_set: HashSet<(usize, usize)> = train_pairs.iter().copied().collect();
        let kept: Vec<(usize, usize, f64)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v, _)| train_set.contains(&(u.min(v), u.max(v))))
            .collect();
        let train = DirectedWeightedGraph::new(n, kept)?;
        if is_strongly_connected(&train) {
            let mut train_pairs = train_pairs;
            train_pairs.sort_unstable();
            return Ok(LinkPredictionSplit {
                train,
                train_pairs,
                val_pairs,
                test_pairs,
                reseeds: attempt,
            });
        }
    }
    Err(Error::SplitDisconnected {
        retries: config.max_reseeds as usize,
    })
}

fn edge_weight(graph: &DirectedWeightedGraph, u: usize, v: usize) -> Option<f64> {
    graph
        .out_neighbours(u)
        .iter()
        .find(|&&(t, _)| t == v)
        .map(|&(_, w)| w)
}

/// Existence and direction ROC areas for held-out pairs, scored from an
/// already fitted embedding.
///
/// Existence: positives are the held-out directed edges, negatives an
/// equal number of seeded uniform ordered non-edges of the full graph;
/// the score is the Fermi-Dirac probability of the embedded distance.
///
/// Direction: every held-out unordered pair with a well-defined true
/// orientation contributes both candidate orientations, the true one
/// labeled positive. The true orientation is the only existing direction,
/// or the strictly cheaper one when both directions exist; equal-weight
/// pairs are skipped. The score is the embedded distance gap, which is
/// identically zero (AUC exactly one half) for any symmetric embedding.
pub fn link_prediction_scores(
    x: &Embedding,
    space: &RandersSpace,
    graph: &DirectedWeightedGraph,
    split: &LinkPredictionSplit,
    config: &LinkPredictionConfig,
) -> Result<(f64, f64)> {
    let n = graph.n();
    if x.n() != n {
        return Err(Error::DimensionMismatch {
            context: "link_prediction_scores",
            expected: n,
            actual: x.n(),
        });
    }
    let held: Vec<(usize, usize)> = split
        .val_pairs
        .iter()
        .chain(&split.test_pairs)
        .copied()
        .collect();
    if held.is_empty() {
        return Err(Error::invalid("no held-out pairs to score"));
    }
    let dist = |a: usize, b: usize| space.distance_unchecked(x.point(a), x.point(b));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9e37_79b9_7f4a_7c15);

    let mut existence: Vec<(f64, bool)> = Vec::new();
    for &(a, b) in &held {
        for (u, v) in [(a, b), (b, a)] {
            if graph.has_edge(u, v) {
                existence.push((
                    fermi_dirac_probability(dist(u, v), config.fermi_r, config.fermi_t),
                    true,
                ));
            }
        }
    }
    let wanted = existence.len();
    let mut drawn = 0usize;
    let mut attempts = 0usize;
    let cap = 1000 * wanted.max(1);
    while drawn < wanted {
        attempts += 1;
        if attempts > cap {
            return Err(Error::invalid(
                "could not sample enough non-edges; graph too dense".to_string(),
            ));
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || graph.has_edge(u, v) {
            continue;
        }
        existence.push((
            fermi_dirac_probability(dist(u, v), config.fermi_r, config.fermi_t),
            false,
        ));
        drawn += 1;
    }
    let existence_auc = roc_auc(&existence)?;

    let mut direction: Vec<(f64, bool)> = Vec::new();
    for &(i, j) in &held {
        let fwd = edge_weight(graph, i, j);
        let bwd = edge_weight(graph, j, i);
        let forward_is_true = match (fwd, bwd) {
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) if a < b => true,
            (Some(a), Some(b)) if b < a => false,
            _ => continue,
        };
        let (s, t) = if forward_is_true { (i, j) } else { (j, i) };
        direction.push((dist(t, s) - dist(s, t), true));
        direction.push((dist(s, t) - dist(t, s), false));
    }
    let direction_auc = roc_auc(&direction)?;
    Ok((existence_auc, direction_auc))
}

#[derive(Debug, Clone)]
pub struct LinkPredictionOutcome {
    pub existence_auc: f64,
    pub direction_auc: f64,
    pub embedding: Embedding,
    pub solver_report: SolveReport,
    pub train_pair_count: usize,
    pub held_out_pair_count: usize,
    pub reseeds: u32,
    /// Stress of the fit on the training dissimilarities.
    pub train_stress: f64,
}

/// The full benchmark: split the graph, compute shortest-path
/// dissimilarities on the training digraph, fit an embedding in the given
/// space, and score the held-out pairs.
pub fn link_prediction_eval(
    graph: &DirectedWeightedGraph,
    space: &RandersSpace,
    solver_config: &SolverConfig,
    config: &LinkPredictionConfig,
) -> Result<LinkPredictionOutcome> {
    let split = link_prediction_split(graph, config)?;
    let d_train = all_pairs_distances(&split.train);
    // Strong connectivity makes every entry finite; the mask is a guard
    // against future relaxations of the split.
    let n = graph.n();
    let mut wm = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && d_train.get(i, j).is_finite() && d_train.get(j, i).is_finite() {
                wm.set(i, j, 1.0);
            }
        }
    }
    let w = WeightMatrix::from_matrix(wm)?;
    let (x, report) = run_finsler_smacof(&d_train, &w, space, solver_config)?;
    let train_stress = finsler_stress(&x, &d_train, &w, space)?;
    let (existence_auc, direction_auc) = link_prediction_scores(&x, space, graph, &split, config)?;
    Ok(LinkPredictionOutcome {
        existence_auc,
        direction_auc,
        embedding: x,
        solver_report: report,
        train_pair_count: split.train_pairs.len(),
        held_out_pair_count: split.val_pairs.len() + split.test_pairs.len(),
        reseeds: split.reseeds,
        train_stress,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissimilarity::tree_graph;
    use rand::rngs::StdRng;

    #[test]
    fn distortion_is_zero_at_an_exact_fit_and_matches_hand_values() {
        let space = RandersSpace::euclidean(1).unwrap();
        let x = Embedding::new(DenseMatrix::from_rows(vec![vec![0.0], vec![2.0]]).unwrap())
            .unwrap();
        let exact = DissimilarityMatrix::from_rows(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(normalized_distortion(&x, &exact, &space).unwrap(), 0.0);
        // Both ordered pairs off by 1 against target 1, one unordered pair.
        let off = DissimilarityMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((normalized_distortion(&x, &off, &space).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn average_precision_hand_case() {
        // Query 0 at the origin, relevant targets at 1.0 and 2.5, a
        // distractor at 2.0: retrieval order rel, non, rel gives
        // AP = (1/1 + 2/3) / 2 = 5/6.
        let x = Embedding::new(
            DenseMatrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0], vec![2.5]]).unwrap(),
        )
        .unwrap();
        let space = RandersSpace::euclidean(1).unwrap();
        let graph =
            DirectedWeightedGraph::new(4, vec![(0, 1, 1.0), (0, 3, 1.0)]).unwrap();
        let got = map_score(&x, &space, &graph).unwrap();
        assert!((got - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_retrieval_scores_one() {
        let x = Embedding::new(
            DenseMatrix::from_rows(vec![vec![0.0], vec![1.0], vec![5.0]]).unwrap(),
        )
        .unwrap();
        let space = RandersSpace::euclidean(1).unwrap();
        let graph = DirectedWeightedGraph::new(3, vec![(0, 1, 1.0), (2, 1, 1.0)]).unwrap();
        assert_eq!(map_score(&x, &space, &graph).unwrap(), 1.0);
    }

    #[test]
    fn no_outgoing_edges_is_an_error() {
        let x = Embedding::new(DenseMatrix::zeros(2, 1)).unwrap();
        let space = RandersSpace::euclidean(1).unwrap();
        let graph = DirectedWeightedGraph::new(2, vec![]).unwrap();
        assert!(map_score(&x, &space, &graph).is_err());
    }

    #[test]
    fn fermi_dirac_shape() {
        assert!((fermi_dirac_probability(1.0, 1.0, 1.0) - 0.5).abs() < 1e-15);
        let near = fermi_dirac_probability(0.1, 1.0, 0.5);
        let far = fermi_dirac_probability(3.0, 1.0, 0.5);
        assert!(near > 0.5 && far < 0.5 && near > far);
    }

    #[test]
    #[should_panic(expected = "temperature")]
    fn fermi_dirac_rejects_nonpositive_temperature() {
        fermi_dirac_probability(1.0, 1.0, 0.0);
    }

    // Direct pairwise count: the independent quadratic oracle for the
    // rank-based implementation.
    fn auc_oracle(samples: &[(f64, bool)]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (sp, lp) in samples {
            if !lp {
                continue;
            }
            for (sn, ln) in samples {
                if *ln {
                    continue;
                }
                pairs += 1.0;
                if sp > sn {
                    wins += 1.0;
                } else if sp == sn {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn auc_hand_values() {
        let perfect = [(0.9, true), (0.8, true), (0.2, false), (0.1, false)];
        assert_eq!(roc_auc(&perfect).unwrap(), 1.0);
        let inverted = [(0.1, true), (0.9, false)];
        assert_eq!(roc_auc(&inverted).unwrap(), 0.0);
        let all_tied = [(0.5, true), (0.5, false), (0.5, true), (0.5, false)];
        assert_eq!(roc_auc(&all_tied).unwrap(), 0.5);
        assert!(matches!(
            roc_auc(&[(0.5, true), (0.7, true)]),
            Err(Error::SingleClass)
        ));
    }

    #[test]
    fn auc_matches_the_quadratic_oracle() {
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(50);
        for _ in 0..10 {
            let samples: Vec<(f64, bool)> = (0..60)
                .map(|_| {
                    // Coarse scores force plenty of ties.
                    let s = (rng.gen_range(0..8) as f64) / 4.0;
                    (s, rng.gen::<bool>())
                })
                .collect();
            if samples.iter().all(|(_, l)| *l) || samples.iter().all(|(_, l)| !*l) {
                continue;
            }
            let got = roc_auc(&samples).unwrap();
            let want = auc_oracle(&samples);
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn split_is_deterministic_disjoint_and_connected() {
        let (graph, _) = tree_graph(4, 0.5, 1.5, 0.1).unwrap();
        let cfg = LinkPredictionConfig::default();
        let a = link_prediction_split(&graph, &cfg).unwrap();
        let b = link_prediction_split(&graph, &cfg).unwrap();
        assert_eq!(a.train_pairs, b.train_pairs);
        assert_eq!(a.val_pairs, b.val_pairs);
        assert_eq!(a.test_pairs, b.test_pairs);
        assert!(is_strongly_connected(&a.train));
        let total = a.train_pairs.len() + a.val_pairs.len() + a.test_pairs.len();
        let mut all: Vec<(usize, usize)> = a
            .train_pairs
            .iter()
            .chain(&a.val_pairs)
            .chain(&a.test_pairs)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), total);
        let frac = a.train_pairs.len() as f64 / total as f64;
        assert!(frac >= 0.8 && frac < 0.95, "train fraction {frac}");
        assert!(!a.test_pairs.is_empty());
    }

    #[test]
    fn geometric_instance_recovers_existence_and_direction() {
        // Ground truth: points in a drifted plane, edges wherever the
        // Randers distance is below a threshold, weighted by that
        // distance. The benchmark should reassemble this almost exactly.
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(51);
        let n = 14;
        let space = RandersSpace::axis_aligned(2, 0.5).unwrap();
        let mut pts = DenseMatrix::zeros(n, 2);
        for i in 0..n {
            pts.set(i, 0, rng.gen_range(-1.0..1.0));
            pts.set(i, 1, rng.gen_range(-1.0..1.0));
        }
        let truth = Embedding::new(pts).unwrap();
        let mut dists: Vec<f64> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dists.push(space.distance_unchecked(truth.point(i), truth.point(j)));
                }
            }
        }
        let mut sorted = dists.clone();
        sorted.sort_by(f64::total_cmp);
        let tau = sorted[dists.len() / 2];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let dij = space.distance_unchecked(truth.point(i), truth.point(j));
                if dij <= tau {
                    edges.push((i, j, dij));
                }
            }
        }
        let graph = DirectedWeightedGraph::new(n, edges).unwrap();
        let outcome = link_prediction_eval(
            &graph,
            &space,
            &SolverConfig::default(),
            &LinkPredictionConfig::default(),
        )
        .unwrap();
        assert!(
            outcome.existence_auc >= 0.85,
            "existence AUC {}",
            outcome.existence_auc
        );
        assert!(
            outcome.direction_auc >= 0.85,
            "direction AUC {}",
            outcome.direction_auc
        );
    }

    #[test]
    fn tree_direction_needs_drift() {
        let (graph, _) = tree_graph(4, 0.5, 1.5, 0.1).unwrap();
        let drifted = RandersSpace::axis_aligned(2, 0.5).unwrap();
        let cfg = LinkPredictionConfig::default();
        let outcome =
            link_prediction_eval(&graph, &drifted, &SolverConfig::default(), &cfg).unwrap();
        assert!(
            outcome.direction_auc >= 0.7,
            "drifted direction AUC {}",
            outcome.direction_auc
        );
        // A symmetric embedding scores all direction samples identically,
        // which the tie-aware AUC counts as exactly one half.
        let flat = RandersSpace::euclidean(2).unwrap();
        let outcome_flat =
            link_prediction_eval(&graph, &flat, &SolverConfig::default(), &cfg).unwrap();
        assert_eq!(outcome_flat.direction_auc, 0.5);
    }
}
