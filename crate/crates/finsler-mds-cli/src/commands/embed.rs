use std::path::PathBuf;

use clap::Args;

use finsler_mds::geometry::RandersSpace;
use finsler_mds::io::{
    read_dissimilarity_csv, read_matrix_csv, write_embedding_csv, write_json,
};
use finsler_mds::solver::{
    run_finsler_smacof, InitMode, LinearSolver, SolverConfig, WeightMatrix,
};

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Flat key=value file supplying any setting not given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input dissimilarity matrix CSV.
    #[arg(long)]
    pub dissimilarity: Option<PathBuf>,
    /// Optional weight matrix CSV (for example wormhole weights).
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Embedding dimension.
    #[arg(long)]
    pub m: Option<usize>,
    /// Drift magnitude of the target space; the drift runs along the last
    /// coordinate axis.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// Relative per-iteration stress decrease below which the run stops.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// auto | direct | iterative
    #[arg(long)]
    pub linear_solver: Option<String>,
    /// classical | symmetric-plus-one
    #[arg(long)]
    pub init: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output embedding CSV.
    #[arg(long)]
    pub out_embedding: Option<PathBuf>,
    /// Output solve report JSON (stress history, convergence).
    #[arg(long)]
    pub out_report: Option<PathBuf>,
}

#[derive(Debug)]
pub struct EmbedParams {
    pub dissimilarity: PathBuf,
    pub weights: Option<PathBuf>,
    pub m: usize,
    pub alpha: f64,
    pub solver: SolverConfig,
    pub out_embedding: PathBuf,
    pub out_report: PathBuf,
}

fn parse_linear_solver(name: &str) -> CliResult<LinearSolver> {
    match name {
        "auto" => Ok(LinearSolver::Auto),
        "direct" => Ok(LinearSolver::Direct),
        "iterative" => Ok(LinearSolver::Iterative),
        other => Err(CliError::usage(format!(
            "unknown linear solver {other:?}; expected auto, direct, or iterative"
        ))),
    }
}

fn parse_init(name: &str) -> CliResult<InitMode> {
    match name {
        "classical" => Ok(InitMode::ClassicalMds),
        "symmetric-plus-one" => Ok(InitMode::SymmetricPlusOne),
        other => Err(CliError::usage(format!(
            "unknown init mode {other:?}; expected classical or symmetric-plus-one"
        ))),
    }
}

pub fn resolve(args: EmbedArgs, cfg: &mut ConfigFile) -> CliResult<EmbedParams> {
    let defaults = SolverConfig::default();
    let solver = SolverConfig {
        max_iters: cfg.resolve(args.max_iters, "max_iters", Some(defaults.max_iters))?,
        rel_stress_tol: cfg.resolve(args.rel_tol, "rel_tol", Some(defaults.rel_stress_tol))?,
        linear_solver: parse_linear_solver(&cfg.resolve(
            args.linear_solver,
            "linear_solver",
            Some("auto".to_string()),
        )?)?,
        init: parse_init(&cfg.resolve(args.init, "init", Some("classical".to_string()))?)?,
        seed: cfg.resolve(args.seed, "seed", Some(defaults.seed))?,
        ..defaults
    };
    Ok(EmbedParams {
        dissimilarity: cfg.resolve(args.dissimilarity, "dissimilarity", None)?,
        weights: cfg.resolve_opt(args.weights, "weights")?,
        m: cfg.resolve(args.m, "m", Some(2))?,
        alpha: cfg.resolve(args.alpha, "alpha", Some(0.5))?,
        solver,
        out_embedding: cfg.resolve(args.out_embedding, "out_embedding", None)?,
        out_report: cfg.resolve(args.out_report, "out_report", None)?,
    })
}

pub fn execute(params: &EmbedParams) -> CliResult<()> {
    let d = read_dissimilarity_csv(&params.dissimilarity)?;
    let w = match &params.weights {
        Some(path) => WeightMatrix::from_matrix(read_matrix_csv(path)?)?,
        None => WeightMatrix::uniform(d.n()),
    };
    let space = RandersSpace::axis_aligned(params.m, params.alpha)?;
    let (embedding, report) = run_finsler_smacof(&d, &w, &space, &params.solver)?;
    write_embedding_csv(&params.out_embedding, &embedding)?;
    write_json(&params.out_report, &report)?;
    Ok(())
}

pub fn run(args: EmbedArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve(args, &mut cfg)?;
    cfg.finish()?;
    execute(&params)
}
