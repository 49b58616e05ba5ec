use std::path::PathBuf;

use clap::Args;

use finsler_mds::io::{atomic_write, read_embedding_csv, read_matrix_csv};
use finsler_mds::solver::Embedding;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::svg::{ramp_color, Scatter};

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Flat key=value file supplying any setting not given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Embedding CSV, 2 or 3 dimensions.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// Per-point color values (n x 1 matrix CSV), mapped through a
    /// sequential ramp.
    #[arg(long)]
    pub color: Option<PathBuf>,
    /// View rotation around the drift axis, degrees (3D only).
    #[arg(long)]
    pub azimuth: Option<f64>,
    /// View tilt above the horizontal plane, degrees (3D only).
    #[arg(long)]
    pub elevation: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    /// Output SVG path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct PlotParams {
    pub embedding: PathBuf,
    pub color: Option<PathBuf>,
    pub azimuth: f64,
    pub elevation: f64,
    pub width: f64,
    pub height: f64,
    pub out: PathBuf,
}

pub fn resolve(args: PlotArgs, cfg: &mut ConfigFile) -> CliResult<PlotParams> {
    Ok(PlotParams {
        embedding: cfg.resolve(args.embedding, "embedding", None)?,
        color: cfg.resolve_opt(args.color, "color")?,
        azimuth: cfg.resolve(args.azimuth, "azimuth", Some(30.0))?,
        elevation: cfg.resolve(args.elevation, "elevation", Some(20.0))?,
        width: cfg.resolve(args.width, "width", Some(800.0))?,
        height: cfg.resolve(args.height, "height", Some(600.0))?,
        out: cfg.resolve(args.out, "out", None)?,
    })
}

/// Orthographic screen coordinates of a 2D or 3D point. The projection
/// rotates by the azimuth around the last (drift) axis, then tilts by the
/// elevation; at zero angles a 3D point maps to its (x, z) pair, so the
/// drift axis stays vertical.
fn project(p: &[f64], azimuth_deg: f64, elevation_deg: f64) -> (f64, f64) {
    match p.len() {
        2 => (p[0], p[1]),
        _ => {
            let (sa, ca) = azimuth_deg.to_radians().sin_cos();
            let (se, ce) = elevation_deg.to_radians().sin_cos();
            let xr = p[0] * ca + p[1] * sa;
            let yr = -p[0] * sa + p[1] * ca;
            (xr, p[2] * ce - yr * se)
        }
    }
}

fn color_values(params: &PlotParams, n: usize) -> CliResult<Option<Vec<f64>>> {
    let Some(path) = &params.color else {
        return Ok(None);
    };
    let m = read_matrix_csv(path)?;
    if m.cols() != 1 || m.rows() != n {
        return Err(CliError::usage(format!(
            "color file must be a {n} x 1 matrix, found {} x {}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(Some((0..n).map(|i| m.get(i, 0)).collect()))
}

fn colors_for(values: Option<Vec<f64>>, n: usize) -> Vec<String> {
    match values {
        None => vec!["#1f77b4".to_string(); n],
        Some(vals) => {
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let span = hi - lo;
            vals.iter()
                .map(|&v| {
                    if span > 0.0 {
                        ramp_color((v - lo) / span)
                    } else {
                        ramp_color(0.5)
                    }
                })
                .collect()
        }
    }
}

pub fn execute(params: &PlotParams) -> CliResult<()> {
    let x = read_embedding_csv(&params.embedding)?;
    if x.dim() > 3 {
        return Err(CliError::usage(format!(
            "cannot plot a {}-dimensional embedding; plotting supports 2 or 3 dimensions",
            x.dim()
        )));
    }
    if x.dim() < 2 {
        return Err(CliError::usage(
            "cannot plot a 1-dimensional embedding; plotting supports 2 or 3 dimensions",
        ));
    }
    let svg = render(params, &x)?;
    atomic_write(&params.out, &svg)?;
    Ok(())
}

fn render(params: &PlotParams, x: &Embedding) -> CliResult<String> {
    let n = x.n();
    let points: Vec<(f64, f64)> = (0..n)
        .map(|i| project(x.point(i), params.azimuth, params.elevation))
        .collect();
    let mut drift_axis = vec![0.0; x.dim()];
    drift_axis[x.dim() - 1] = 1.0;
    let plot = Scatter {
        width: params.width,
        height: params.height,
        points,
        colors: colors_for(color_values(params, n)?, n),
        drift: project(&drift_axis, params.azimuth, params.elevation),
    };
    Ok(plot.render())
}

pub fn run(args: PlotArgs) -> CliResult<()> {
    let mut cfg = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve(args, &mut cfg)?;
    cfg.finish()?;
    execute(&params)
}
