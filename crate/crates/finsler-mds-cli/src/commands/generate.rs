use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use finsler_mds::datasets::{
    current_map, river, roll_total_arc_length, roll_width, swiss_roll, swiss_roll_with_hole,
};
use finsler_mds::dissimilarity::{tree_graph, PointCloudWithField};
use finsler_mds::io::{write_graph_csv, write_json, write_matrix_csv, write_point_cloud_csv};
use finsler_mds::linalg::DenseMatrix;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Flat key=value file supplying any setting not given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// swiss-roll | swiss-roll-hole | current-map | river | tree
    #[arg(long)]
    pub kind: Option<String>,
    /// Directory receiving the dataset files.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Sample count (ignored by the tree, whose size is set by depth).
    #[arg(long)]
    pub n: Option<usize>,
    /// Drift strength in [0, 1).
    #[arg(long)]
    pub alpha_tilde: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Spatial frequency of the current field (current-map only).
    #[arg(long)]
    pub nu: Option<f64>,
    /// Tree depth; the tree has 2^(depth+1) - 1 nodes.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Parent-to-child edge weight (tree only).
    #[arg(long)]
    pub down: Option<f64>,
    /// Child-to-parent edge weight (tree only).
    #[arg(long)]
    pub up: Option<f64>,
    /// Same-level edge weight (tree only).
    #[arg(long)]
    pub lateral: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    SwissRoll,
    SwissRollHole,
    CurrentMap,
    River,
    Tree,
}

impl Kind {
    pub fn parse(name: &str) -> CliResult<Kind> {
        match name {
            "swiss-roll" => Ok(Kind::SwissRoll),
            "swiss-roll-hole" => Ok(Kind::SwissRollHole),
            "current-map" => Ok(Kind::CurrentMap),
            "river" => Ok(Kind::River),
            "tree" => Ok(Kind::Tree),
            other => Err(CliError::usage(format!(
                "unknown dataset kind {other:?}; expected swiss-roll, swiss-roll-hole, current-map, river, or tree"
            ))),
        }
    }

    /// Neighbour count that downstream dissimilarity construction defaults
    /// to for this dataset.
    pub fn default_k(self) -> usize {
        match self {
            Kind::SwissRollHole => 15,
            _ => 10,
        }
    }
}

#[derive(Debug)]
pub struct GenerateParams {
    pub kind: Kind,
    pub out_dir: PathBuf,
    pub n: usize,
    pub alpha_tilde: f64,
    pub seed: u64,
    pub nu: f64,
    pub depth: usize,
    pub down: f64,
    pub up: f64,
    pub lateral: f64,
}

#[derive(Serialize)]
struct Metadata {
    kind: &'static str,
    seed: u64,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_tilde: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    down: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    up: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lateral: Option<f64>,
    /// What the single column of labels.csv holds.
    label: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    strip_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strip_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hole_s_range: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hole_w_range: Option<[f64; 2]>,
}

impl Metadata {
    fn new(kind: &'static str, seed: u64, n: usize, label: &'static str) -> Metadata {
        Metadata {
            kind,
            seed,
            n,
            alpha_tilde: None,
            nu: None,
            depth: None,
            down: None,
            up: None,
            lateral: None,
            label,
            strip_length: None,
            strip_width: None,
            hole_s_range: None,
            hole_w_range: None,
        }
    }
}

pub fn resolve(args: GenerateArgs, cfg: &mut ConfigFile) -> CliResult<GenerateParams> {
    let kind = Kind::parse(&cfg.resolve(args.kind, "kind", None)?)?;
    let out_dir = cfg.resolve(args.out_dir, "out_dir", None)?;
    let (def_n, def_alpha) = match kind {
        Kind::SwissRoll => (3000, 0.3),
        Kind::SwissRollHole => (2000, 0.5),
        Kind::CurrentMap => (2000, 0.5),
        Kind::River => (1000, 0.2),
        Kind::Tree => (0, 0.0),
    };
    Ok(GenerateParams {
        kind,
        out_dir,
        n: cfg.resolve(args.n, "n", Some(def_n))?,
        alpha_tilde: cfg.resolve(args.alpha_tilde, "alpha_tilde", Some(def_alpha))?,
        seed: cfg.resolve(args.seed, "seed", Some(0))?,
        nu: cfg.resolve(args.nu, "nu", Some(2.0))?,
        depth: cfg.resolve(args.depth, "depth", Some(7))?,
        down: cfg.resolve(args.down, "down", Some(0.5))?,
        up: cfg.resolve(args.up, "up", Some(1.5))?,
        lateral: cfg.resolve(args.lateral, "lateral", Some(0.1))?,
    })
}

pub fn execute(params: &GenerateParams) -> CliResult<()> {
    std::fs::create_dir_all(&params.out_dir).map_err(|e| CliError {
        code: crate::error::EXIT_IO,
        message: format!("cannot create {}: {e}", params.out_dir.display()),
    })?;
    let points_path = params.out_dir.join("points.csv");
    let graph_path = params.out_dir.join("graph.csv");
    let labels_path = params.out_dir.join("labels.csv");
    let boundary_path = params.out_dir.join("boundary.csv");
    let meta_path = params.out_dir.join("metadata.json");

    match params.kind {
        Kind::SwissRoll => {
            let sample = swiss_roll(params.n, params.alpha_tilde, params.seed)?;
            write_point_cloud_csv(&points_path, &sample.cloud)?;
            write_labels(&labels_path, &sample.arc_length)?;
            let mut meta = Metadata::new("swiss-roll", params.seed, params.n, "arc length");
            meta.alpha_tilde = Some(params.alpha_tilde);
            meta.strip_length = Some(roll_total_arc_length());
            meta.strip_width = Some(roll_width());
            write_json(&meta_path, &meta)?;
        }
        Kind::SwissRollHole => {
            let sample = swiss_roll_with_hole(params.n, params.alpha_tilde, params.seed)?;
            write_point_cloud_csv(&points_path, &sample.cloud)?;
            write_labels(&labels_path, &sample.arc_length)?;
            let mask: Vec<f64> = sample
                .boundary
                .iter()
                .map(|&b| if b { 1.0 } else { 0.0 })
                .collect();
            write_labels(&boundary_path, &mask)?;
            let mut meta = Metadata::new(
                "swiss-roll-hole",
                params.seed,
                sample.cloud.n(),
                "arc length",
            );
            meta.alpha_tilde = Some(params.alpha_tilde);
            meta.strip_length = Some(roll_total_arc_length());
            meta.strip_width = Some(roll_width());
            meta.hole_s_range = Some(sample.hole_s_range);
            meta.hole_w_range = Some(sample.hole_w_range);
            write_json(&meta_path, &meta)?;
        }
        Kind::CurrentMap => {
            let cloud = current_map(params.n, params.nu, params.alpha_tilde, params.seed)?;
            write_point_cloud_csv(&points_path, &cloud)?;
            write_labels(&labels_path, &drift_speeds(&cloud))?;
            let mut meta = Metadata::new("current-map", params.seed, params.n, "current speed");
            meta.alpha_tilde = Some(params.alpha_tilde);
            meta.nu = Some(params.nu);
            write_json(&meta_path, &meta)?;
        }
        Kind::River => {
            let cloud = river(params.n, params.alpha_tilde, params.seed)?;
            write_point_cloud_csv(&points_path, &cloud)?;
            let downstream: Vec<f64> = (0..cloud.n()).map(|i| cloud.point(i)[0]).collect();
            write_labels(&labels_path, &downstream)?;
            let mut meta = Metadata::new("river", params.seed, params.n, "downstream position");
            meta.alpha_tilde = Some(params.alpha_tilde);
            write_json(&meta_path, &meta)?;
        }
        Kind::Tree => {
            let (graph, depths) = tree_graph(params.depth, params.down, params.up, params.lateral)?;
            write_graph_csv(&graph_path, &graph)?;
            let depths: Vec<f64> = depths.iter().map(|&d| d as f64).collect();
            write_labels(&labels_path, &depths)?;
            let mut meta = Metadata::new("tree", params.seed, graph.n(), "node depth");
            meta.depth = Some(params.depth);
            meta.down = Some(params.down);
            meta.up = Some(params.up);
            meta.lateral = Some(params.lateral);
            write_json(&meta_path, &meta)?;
        }
    }
    Ok(())
}

pub fn run(args: GenerateArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve(args, &mut cfg)?;
    cfg.finish()?;
    execute(&params)
}

fn write_labels(path: &PathBuf, values: &[f64]) -> CliResult<()> {
    let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
    write_matrix_csv(path, &DenseMatrix::from_rows(rows)?)?;
    Ok(())
}

fn drift_speeds(cloud: &PointCloudWithField) -> Vec<f64> {
    (0..cloud.n())
        .map(|i| {
            cloud
                .drift_at(i)
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}
