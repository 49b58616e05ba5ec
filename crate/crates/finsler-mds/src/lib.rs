//! Embedding of asymmetric dissimilarity data into Randers spaces.
//!
//! Classical multidimensional scaling assumes the input dissimilarities are
//! symmetric, which silently discards the directional half of data such as
//! one-way travel times, currents, wind fields, or hierarchy relations. This
//! crate embeds into a *canonical Randers space* instead: `R^m` equipped with
//!
//! ```text
//! F(u) = ||u||_2 + w^T u,      ||w||_2 = alpha < 1
//! ```
//!
//! whose induced distance `d(x, y) = ||y - x||_2 + w^T (y - x)` is an
//! asymmetric metric with straight-line geodesics. The embedding minimizes a
//! Finsler stress over ordered point pairs by iterated majorization, so the
//! directional residue `d(x, y) - d(y, x)` of the data is carried by the
//! drift covector `w` rather than being averaged away.
//!
//! # Modules
//!
//! | module | contents |
//! |--------|----------|
//! | [`geometry`] | Randers metrics, distances, Zermelo navigation conversion |
//! | [`dissimilarity`] | directed k-NN graphs, Dijkstra, dissimilarity matrices |
//! | [`solver`] | Finsler stress majorization (SMACOF) and gradient descent |
//! | [`wormhole`] | boundary-interaction weights for partially observed data |
//! | [`datasets`] | seeded synthetic generators (rolls, currents, trees) |
//! | [`metrics`] | distortion, retrieval MAP, ROC-AUC, link prediction |
//! | [`linalg`] | dense eigenproblems, least squares, GMRES |
//! | [`io`] | deterministic CSV and JSON serialization |
//!
//! # Example
//!
//! Two points with one-way dissimilarities 1.3 and 0.7 embed exactly: the
//! round trip fixes the separation at 1 and the drift coordinate of the
//! displacement absorbs the directional gap.
//!
//! ```
//! use finsler_mds::geometry::RandersSpace;
//! use finsler_mds::dissimilarity::DissimilarityMatrix;
//! use finsler_mds::solver::{run_finsler_smacof, SolverConfig, WeightMatrix};
//!
//! let d = DissimilarityMatrix::from_rows(vec![
//!     vec![0.0, 1.3],
//!     vec![0.7, 0.0],
//! ]).unwrap();
//! let space = RandersSpace::axis_aligned(2, 0.5).unwrap();
//! let w = WeightMatrix::uniform(2);
//! let (x, report) = run_finsler_smacof(&d, &w, &space, &SolverConfig::default()).unwrap();
//! assert!(report.converged);
//! assert!(report.final_stress < 1e-10);
//! let delta: Vec<f64> = (0..2).map(|c| x.coords().get(1, c) - x.coords().get(0, c)).collect();
//! assert!((delta[1] - 0.6).abs() < 1e-5);
//! ```
//!
//! With the default `parallel` feature the all-pairs searches, stress
//! assembly, and matrix products run on rayon; disabling it yields a fully
//! sequential build with identical results.

pub mod datasets;
pub mod dissimilarity;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod solver;
pub mod wormhole;

mod error;
mod par;

pub use error::{Error, Result};
