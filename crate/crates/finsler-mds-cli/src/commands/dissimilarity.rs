use std::path::PathBuf;

use clap::Args;

use finsler_mds::dissimilarity::{all_pairs_distances, build_knn_digraph};
use finsler_mds::io::{
    read_graph_csv, read_matrix_csv, read_point_cloud_csv, write_dissimilarity_csv,
    write_matrix_csv,
};
use finsler_mds::wormhole::{
    boundary_cost_factor, shortcut_threshold_matrix, wormhole_weights, BoundarySet,
    ConsistencyMode,
};

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct DissimilarityArgs {
    /// Flat key=value file supplying any setting not given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Point cloud CSV with drift columns; mutually exclusive with --graph.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Directed weighted graph CSV; mutually exclusive with --points.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Drift strength of the point cloud (required with --points; the CSV
    /// does not carry it).
    #[arg(long)]
    pub alpha_tilde: Option<f64>,
    /// Neighbours per point for the kNN digraph.
    #[arg(long)]
    pub k: Option<usize>,
    /// Boundary membership column (n x 1 matrix CSV of 0/1); enables
    /// wormhole consistency weights.
    #[arg(long)]
    pub boundary: Option<PathBuf>,
    /// binary | soft
    #[arg(long)]
    pub consistency: Option<String>,
    /// Where the wormhole weight matrix goes (required with --boundary).
    #[arg(long)]
    pub out_weights: Option<PathBuf>,
    /// Output dissimilarity matrix CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct DissimilarityParams {
    pub points: Option<PathBuf>,
    pub graph: Option<PathBuf>,
    pub alpha_tilde: Option<f64>,
    pub k: usize,
    pub boundary: Option<PathBuf>,
    pub consistency: ConsistencyMode,
    pub out_weights: Option<PathBuf>,
    pub out: PathBuf,
}

pub fn parse_consistency(name: &str) -> CliResult<ConsistencyMode> {
    match name {
        "binary" => Ok(ConsistencyMode::Binary),
        "soft" => Ok(ConsistencyMode::Soft),
        other => Err(CliError::usage(format!(
            "unknown consistency mode {other:?}; expected binary or soft"
        ))),
    }
}

pub fn resolve(args: DissimilarityArgs, cfg: &mut ConfigFile) -> CliResult<DissimilarityParams> {
    let params = DissimilarityParams {
        points: cfg.resolve_opt(args.points, "points")?,
        graph: cfg.resolve_opt(args.graph, "graph")?,
        alpha_tilde: cfg.resolve_opt(args.alpha_tilde, "alpha_tilde")?,
        k: cfg.resolve(args.k, "k", Some(10))?,
        boundary: cfg.resolve_opt(args.boundary, "boundary")?,
        consistency: parse_consistency(&cfg.resolve(
            args.consistency,
            "consistency",
            Some("binary".to_string()),
        )?)?,
        out_weights: cfg.resolve_opt(args.out_weights, "out_weights")?,
        out: cfg.resolve(args.out, "out", None)?,
    };
    match (&params.points, &params.graph) {
        (Some(_), Some(_)) => Err(CliError::usage("--points and --graph are mutually exclusive")),
        (None, None) => Err(CliError::usage("one of --points or --graph is required")),
        (Some(_), None) if params.alpha_tilde.is_none() => {
            Err(CliError::usage("--alpha-tilde is required with --points"))
        }
        (None, Some(_)) if params.boundary.is_some() => Err(CliError::usage(
            "--boundary requires --points; a graph has no ambient coordinates",
        )),
        _ => {
            if params.boundary.is_some() && params.out_weights.is_none() {
                return Err(CliError::usage("--boundary requires --out-weights"));
            }
            if params.out_weights.is_some() && params.boundary.is_none() {
                return Err(CliError::usage("--out-weights requires --boundary"));
            }
            Ok(params)
        }
    }
}

pub fn execute(params: &DissimilarityParams) -> CliResult<()> {
    if let Some(graph_path) = &params.graph {
        let graph = read_graph_csv(graph_path)?;
        let d = all_pairs_distances(&graph);
        write_dissimilarity_csv(&params.out, &d)?;
        return Ok(());
    }
    let points_path = params.points.as_ref().expect("resolve checked presence");
    let alpha_tilde = params.alpha_tilde.expect("resolve checked presence");
    let cloud = read_point_cloud_csv(points_path, alpha_tilde)?;
    let graph = build_knn_digraph(&cloud, params.k)?;
    let d = all_pairs_distances(&graph);
    write_dissimilarity_csv(&params.out, &d)?;

    if let Some(boundary_path) = &params.boundary {
        let mask_matrix = read_matrix_csv(boundary_path)?;
        if mask_matrix.cols() != 1 || mask_matrix.rows() != cloud.n() {
            return Err(CliError::usage(format!(
                "boundary file must be a {} x 1 matrix, found {} x {}",
                cloud.n(),
                mask_matrix.rows(),
                mask_matrix.cols()
            )));
        }
        let mask: Vec<bool> = (0..mask_matrix.rows())
            .map(|i| mask_matrix.get(i, 0) > 0.5)
            .collect();
        let boundary = BoundarySet::from_mask(&mask);
        let cf = boundary_cost_factor(alpha_tilde)?;
        let threshold = shortcut_threshold_matrix(&d, cloud.points(), &boundary, cf)?;
        let weights = wormhole_weights(&d, &threshold, params.consistency)?;
        let out_weights = params.out_weights.as_ref().expect("resolve checked presence");
        write_matrix_csv(out_weights, weights.matrix())?;
    }
    Ok(())
}

pub fn run(args: DissimilarityArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve(args, &mut cfg)?;
    cfg.finish()?;
    execute(&params)
}
