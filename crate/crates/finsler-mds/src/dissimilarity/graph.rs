//! Directed weighted graphs and shortest-path dissimilarities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::par;

/// Directed graph with non-negative finite edge weights and no self-loops.
///
/// Both the raw edge list (insertion-independent, sorted by endpoints) and a
/// per-node adjacency are kept; the former drives serialization and
/// link-prediction splits, the latter the searches.
#[derive(Debug, Clone)]
pub struct DirectedWeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl DirectedWeightedGraph {
    pub fn new(n: usize, mut edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(u, v, w) in &edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on node {u}")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) weight {w} must be finite and >= 0"
                )));
            }
        }
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::invalid(format!(
                    "duplicate edge ({}, {})",
                    pair[0].0, pair[0].1
                )));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v, w) in &edges {
            adjacency[u].push((v, w));
        }
        Ok(DirectedWeightedGraph { n, edges, adjacency })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    #[inline]
    pub fn out_neighbours(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n
            && self.adjacency[u]
                .binary_search_by(|&(t, _)| t.cmp(&v))
                .is_ok()
    }

    /// The graph with every edge reversed.
    pub fn reversed(&self) -> DirectedWeightedGraph {
        let edges = self.edges.iter().map(|&(u, v, w)| (v, u, w)).collect();
        DirectedWeightedGraph::new(self.n, edges).expect("reversal preserves validity")
    }
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Reversed so the std max-heap pops the smallest distance; equal
    // distances settle in node-index order for reproducibility.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Single-source shortest path distances; unreachable nodes get `+inf`.
pub fn dijkstra_single_source(graph: &DirectedWeightedGraph, source: usize) -> Result<Vec<f64>> {
    if source >= graph.n() {
        return Err(Error::NodeOutOfRange {
            index: source,
            n: graph.n(),
        });
    }
    let mut dist = vec![f64::INFINITY; graph.n()];
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in graph.out_neighbours(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapEntry { dist: nd, node: v });
            }
        }
    }
    Ok(dist)
}

/// All-pairs shortest-path matrix; row `i` is the Dijkstra tree from `i`.
/// Sources run in parallel.
pub fn all_pairs_distances(graph: &DirectedWeightedGraph) -> DissimilarityMatrix {
    let n = graph.n();
    let rows = par::map_indexed(n, |i| {
        dijkstra_single_source(graph, i).expect("source index is in range")
    });
    let mut data = DenseMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        data.row_mut(i).copy_from_slice(&row);
    }
    DissimilarityMatrix::from_matrix(data).expect("shortest paths form a valid dissimilarity")
}

/// `true` when every node reaches every other along directed edges.
pub fn is_strongly_connected(graph: &DirectedWeightedGraph) -> bool {
    let n = graph.n();
    if n <= 1 {
        return true;
    }
    reaches_all(graph, 0) && reaches_all(&graph.reversed(), 0)
}

fn reaches_all(graph: &DirectedWeightedGraph, start: usize) -> bool {
    let mut seen = vec![false; graph.n()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in graph.out_neighbours(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == graph.n()
}

/// Complete binary tree digraph of the given depth.
///
/// Nodes are heap-indexed (`0` is the root, node `i` has children `2i+1`
/// and `2i+2`), giving `2^(depth+1) - 1` nodes. Parent-to-child edges weigh
/// `down`, child-to-parent `up`, and every ordered pair of distinct nodes
/// at the same depth is joined laterally with weight `lateral`.
///
/// Returns the graph and each node's depth.
pub fn tree_graph(
    depth: usize,
    down: f64,
    up: f64,
    lateral: f64,
) -> Result<(DirectedWeightedGraph, Vec<usize>)> {
    if depth > 16 {
        return Err(Error::invalid(format!(
            "tree depth {depth} exceeds the supported maximum of 16"
        )));
    }
    for (name, w) in [("down", down), ("up", up), ("lateral", lateral)] {
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::invalid(format!(
                "{name} weight {w} must be finite and > 0"
            )));
        }
    }
    let n = (1usize << (depth + 1)) - 1;
    let depths: Vec<usize> = (0..n).map(|i| (usize::BITS - 1 - (i + 1).leading_zeros()) as usize).collect();
    let mut edges = Vec::new();
    for parent in 0..n {
        for child in [2 * parent + 1, 2 * parent + 2] {
            if child < n {
                edges.push((parent, child, down));
                edges.push((child, parent, up));
            }
        }
    }
    for level in 1..=depth {
        let start = (1usize << level) - 1;
        let end = (1usize << (level + 1)) - 1;
        for u in start..end {
            for v in start..end {
                if u != v {
                    edges.push((u, v, lateral));
                }
            }
        }
    }
    let graph = DirectedWeightedGraph::new(n, edges)?;
    Ok((graph, depths))
}

/// All-pairs shortest paths over the tree digraph of [`tree_graph`].
pub fn tree_dissimilarity(
    depth: usize,
    down: f64,
    up: f64,
    lateral: f64,
) -> Result<DissimilarityMatrix> {
    let (graph, _) = tree_graph(depth, down, up, lateral)?;
    Ok(all_pairs_distances(&graph))
}
