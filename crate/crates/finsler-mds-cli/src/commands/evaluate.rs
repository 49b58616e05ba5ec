use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use finsler_mds::geometry::RandersSpace;
use finsler_mds::io::{read_dissimilarity_csv, read_embedding_csv, read_graph_csv, write_json};
use finsler_mds::metrics::{
    link_prediction_eval, map_score, normalized_distortion, LinkPredictionConfig,
};
use finsler_mds::solver::SolverConfig;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Flat key=value file supplying any setting not given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Embedding CSV to score.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Drift magnitude of the embedding space (0 scores with the Euclidean
    /// metric).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Dissimilarity CSV; enables normalized distortion.
    #[arg(long)]
    pub dissimilarity: Option<PathBuf>,
    /// Graph CSV; enables mean average precision and link prediction.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Run the link-prediction experiment (splits the graph, re-embeds the
    /// training part, reports existence and direction AUC).
    #[arg(long)]
    pub link_prediction: bool,
    /// Seed for the link-prediction split and negative sampling.
    #[arg(long)]
    pub lp_seed: Option<u64>,
    #[arg(long)]
    pub train_fraction: Option<f64>,
    /// Output metrics JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct EvaluateParams {
    pub embedding: PathBuf,
    pub alpha: f64,
    pub dissimilarity: Option<PathBuf>,
    pub graph: Option<PathBuf>,
    pub link_prediction: bool,
    pub lp_seed: u64,
    pub train_fraction: f64,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct MetricsOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_distortion: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    existence_auc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direction_auc: Option<f64>,
}

pub fn resolve(args: EvaluateArgs, cfg: &mut ConfigFile) -> CliResult<EvaluateParams> {
    let lp_defaults = LinkPredictionConfig::default();
    let params = EvaluateParams {
        embedding: cfg.resolve(args.embedding, "embedding", None)?,
        alpha: cfg.resolve(args.alpha, "alpha", Some(0.5))?,
        dissimilarity: cfg.resolve_opt(args.dissimilarity, "dissimilarity")?,
        graph: cfg.resolve_opt(args.graph, "graph")?,
        link_prediction: cfg.resolve_flag(args.link_prediction, "link_prediction")?,
        lp_seed: cfg.resolve(args.lp_seed, "lp_seed", Some(lp_defaults.seed))?,
        train_fraction: cfg.resolve(
            args.train_fraction,
            "train_fraction",
            Some(lp_defaults.train_fraction),
        )?,
        out: cfg.resolve(args.out, "out", None)?,
    };
    if params.dissimilarity.is_none() && params.graph.is_none() {
        return Err(CliError::usage(
            "nothing to evaluate: give --dissimilarity, --graph, or both",
        ));
    }
    if params.link_prediction && params.graph.is_none() {
        return Err(CliError::usage("link prediction needs a graph to split"));
    }
    Ok(params)
}

pub fn execute(params: &EvaluateParams) -> CliResult<()> {
    let x = read_embedding_csv(&params.embedding)?;
    let space = RandersSpace::axis_aligned(x.dim(), params.alpha)?;
    let mut out = MetricsOut {
        normalized_distortion: None,
        map: None,
        existence_auc: None,
        direction_auc: None,
    };
    if let Some(path) = &params.dissimilarity {
        let d = read_dissimilarity_csv(path)?;
        out.normalized_distortion = Some(normalized_distortion(&x, &d, &space)?);
    }
    if let Some(path) = &params.graph {
        let graph = read_graph_csv(path)?;
        out.map = Some(map_score(&x, &space, &graph)?);
        if params.link_prediction {
            let lp_config = LinkPredictionConfig {
                seed: params.lp_seed,
                train_fraction: params.train_fraction,
                ..LinkPredictionConfig::default()
            };
            let solver = SolverConfig {
                seed: params.lp_seed,
                ..SolverConfig::default()
            };
            let outcome = link_prediction_eval(&graph, &space, &solver, &lp_config)?;
            out.existence_auc = Some(outcome.existence_auc);
            out.direction_auc = Some(outcome.direction_auc);
        }
    }
    write_json(&params.out, &out)?;
    Ok(())
}

pub fn run(args: EvaluateArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve(args, &mut cfg)?;
    cfg.finish()?;
    execute(&params)
}
