//! End-to-end runs from a single config: generate a dataset, build its
//! dissimilarities, embed, score, and plot, all into one directory.
//!
//! The pipeline reuses the other commands' parameter resolution against the
//! shared config, so any key a chained command accepts works here, with one
//! exception: file locations. The pipeline owns its layout (fixed names
//! inside `out_dir`), and path keys that would silently lose that tie are
//! rejected up front. All parameters resolve before the first file is
//! written, so a bad config leaves the output directory untouched.

use std::path::PathBuf;

use clap::Args;

use crate::commands::{dissimilarity, embed, evaluate, generate, plot};
use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

/// Keys of the chained commands that name input or output files. Their
/// values are fixed by the pipeline's layout, so accepting them would mean
/// silently ignoring what the user wrote.
const LAYOUT_KEYS: [&str; 11] = [
    "boundary",
    "color",
    "dissimilarity",
    "embedding",
    "graph",
    "out",
    "out_embedding",
    "out_report",
    "out_weights",
    "points",
    "weights",
];

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Flat key=value file describing the whole run; accepts the union of
    /// the chained commands' keys except file paths.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the config's out_dir.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

struct Stages {
    generate: generate::GenerateParams,
    dissimilarity: dissimilarity::DissimilarityParams,
    embed: embed::EmbedParams,
    evaluate: evaluate::EvaluateParams,
    plot: Option<plot::PlotParams>,
}

fn resolve(args: PipelineArgs, cfg: &mut ConfigFile) -> CliResult<Stages> {
    for key in LAYOUT_KEYS {
        if cfg.has(key) {
            return Err(CliError::usage(format!(
                "the pipeline writes fixed file names inside out_dir; remove key `{key}`"
            )));
        }
    }

    let gen_params = generate::resolve(
        generate::GenerateArgs {
            config: None,
            kind: None,
            out_dir: args.out_dir,
            n: None,
            alpha_tilde: None,
            seed: None,
            nu: None,
            depth: None,
            down: None,
            up: None,
            lateral: None,
        },
        cfg,
    )?;
    let dir = &gen_params.out_dir;
    let is_tree = gen_params.kind == generate::Kind::Tree;
    let has_hole = gen_params.kind == generate::Kind::SwissRollHole;
    let points_path = (!is_tree).then(|| dir.join("points.csv"));
    let graph_path = is_tree.then(|| dir.join("graph.csv"));
    let boundary_path = has_hole.then(|| dir.join("boundary.csv"));
    let weights_path = has_hole.then(|| dir.join("weights.csv"));
    let labels_path = dir.join("labels.csv");
    let d_path = dir.join("d.csv");
    let embedding_path = dir.join("embedding.csv");
    let report_path = dir.join("report.json");
    let metrics_path = dir.join("metrics.json");
    let svg_path = dir.join("plot.svg");

    let k = cfg.resolve(None, "k", Some(gen_params.kind.default_k()))?;
    let diss_params = dissimilarity::resolve(
        dissimilarity::DissimilarityArgs {
            config: None,
            points: points_path,
            graph: graph_path.clone(),
            alpha_tilde: (!is_tree).then_some(gen_params.alpha_tilde),
            k: Some(k),
            boundary: boundary_path,
            consistency: None,
            out_weights: weights_path.clone(),
            out: Some(d_path.clone()),
        },
        cfg,
    )?;

    let embed_params = embed::resolve(
        embed::EmbedArgs {
            config: None,
            dissimilarity: Some(d_path.clone()),
            weights: weights_path,
            m: None,
            alpha: None,
            max_iters: None,
            rel_tol: None,
            linear_solver: None,
            init: None,
            seed: None,
            out_embedding: Some(embedding_path.clone()),
            out_report: Some(report_path),
        },
        cfg,
    )?;

    let eval_params = evaluate::resolve(
        evaluate::EvaluateArgs {
            config: None,
            embedding: Some(embedding_path.clone()),
            alpha: Some(embed_params.alpha),
            dissimilarity: Some(d_path),
            graph: graph_path,
            link_prediction: false,
            lp_seed: None,
            train_fraction: None,
            out: Some(metrics_path),
        },
        cfg,
    )?;

    // Plot parameters always resolve, so view keys stay recognized even
    // when the plot itself is switched off.
    let plot_params = plot::resolve(
        plot::PlotArgs {
            config: None,
            embedding: Some(embedding_path),
            color: Some(labels_path),
            azimuth: None,
            elevation: None,
            width: None,
            height: None,
            out: Some(svg_path),
        },
        cfg,
    )?;
    let plot_enabled = cfg.resolve(None, "plot", Some(embed_params.m <= 3))?;
    if plot_enabled && embed_params.m > 3 {
        return Err(CliError::usage(format!(
            "plot = true needs an embedding dimension of at most 3, got m = {}",
            embed_params.m
        )));
    }

    Ok(Stages {
        generate: gen_params,
        dissimilarity: diss_params,
        embed: embed_params,
        evaluate: eval_params,
        plot: plot_enabled.then_some(plot_params),
    })
}

pub fn run(args: PipelineArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load(&args.config)?;
    let stages = resolve(args, &mut cfg)?;
    cfg.finish()?;
    generate::execute(&stages.generate)?;
    dissimilarity::execute(&stages.dissimilarity)?;
    embed::execute(&stages.embed)?;
    evaluate::execute(&stages.evaluate)?;
    if let Some(plot_params) = &stages.plot {
        plot::execute(plot_params)?;
    }
    Ok(())
}
