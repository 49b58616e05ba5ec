//! Plain-text serialization: matrices, point clouds, graphs, and JSON
//! documents.
//!
//! All writers are atomic (content lands under a temporary name in the
//! target directory and is renamed into place) so a failed run never
//! leaves a truncated file behind. Floating point values are written with
//! 17 significant digits, enough to round-trip `f64` exactly; infinities
//! serialize as `inf`.
//!
//! Formats:
//! - matrix: `n_rows,n_cols` header line, then one comma-separated row per
//!   line
//! - point cloud: `x1,..,xm,w1,..,wm` header naming the coordinate and
//!   drift columns
//! - embedding: `x1,..,xm` header
//! - graph: `n_nodes,n_edges` header, then `src,dst,weight` lines

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::dissimilarity::{DirectedWeightedGraph, DissimilarityMatrix, PointCloudWithField};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::solver::Embedding;

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Writes `content` next to `path` and renames it into place.
pub fn atomic_write(path: impl AsRef<Path>, content: &str) -> Result<()> {
    let path = path.as_ref();
    let mut tmp_name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("{} has no file name", path.display())))?
        .to_os_string();
    tmp_name.push(".tmp");
    let tmp: PathBuf = path.with_file_name(tmp_name);
    fs::write(&tmp, content).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn format_value(v: f64) -> String {
    if v.is_infinite() {
        (if v > 0.0 { "inf" } else { "-inf" }).to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn parse_value(path: &Path, line: usize, token: &str) -> Result<f64> {
    match token.trim() {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|e| parse_err(path, line, format!("bad number {t:?}: {e}"))),
    }
}

fn render_matrix_body(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let mut first = true;
        for v in m.row(i) {
            if !first {
                out.push(',');
            }
            out.push_str(&format_value(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<()> {
    let mut out = format!("{},{}\n", m.rows(), m.cols());
    out.push_str(&render_matrix_body(m));
    atomic_write(path, &out)
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let content = read_to_string(path)?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let dims: Vec<&str> = header.split(',').collect();
    if dims.len() != 2 {
        return Err(parse_err(path, 1, "expected header n_rows,n_cols"));
    }
    let rows: usize = dims[0]
        .trim()
        .parse()
        .map_err(|e| parse_err(path, 1, format!("bad row count: {e}")))?;
    let cols: usize = dims[1]
        .trim()
        .parse()
        .map_err(|e| parse_err(path, 1, format!("bad column count: {e}")))?;
    let mut m = DenseMatrix::zeros(rows, cols);
    let mut filled = 0usize;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if filled >= rows {
            return Err(parse_err(path, idx + 1, "more rows than the header declares"));
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != cols {
            return Err(parse_err(
                path,
                idx + 1,
                format!("expected {cols} values, found {}", tokens.len()),
            ));
        }
        for (j, tok) in tokens.iter().enumerate() {
            m.set(filled, j, parse_value(path, idx + 1, tok)?);
        }
        filled += 1;
    }
    if filled != rows {
        return Err(parse_err(
            path,
            content.lines().count(),
            format!("header declares {rows} rows, found {filled}"),
        ));
    }
    Ok(m)
}

pub fn write_dissimilarity_csv(path: impl AsRef<Path>, d: &DissimilarityMatrix) -> Result<()> {
    write_matrix_csv(path, d.matrix())
}

pub fn read_dissimilarity_csv(path: impl AsRef<Path>) -> Result<DissimilarityMatrix> {
    DissimilarityMatrix::from_matrix(read_matrix_csv(path)?)
}

pub fn write_point_cloud_csv(path: impl AsRef<Path>, cloud: &PointCloudWithField) -> Result<()> {
    let m = cloud.dim();
    let mut out = String::new();
    for c in 0..m {
        let _ = write!(out, "x{}{}", c + 1, ",");
    }
    for c in 0..m {
        let _ = write!(out, "w{}", c + 1);
        if c + 1 < m {
            out.push(',');
        }
    }
    out.push('\n');
    for i in 0..cloud.n() {
        for v in cloud.point(i) {
            let _ = write!(out, "{},", format_value(*v));
        }
        let drift = cloud.drift_at(i);
        for (c, v) in drift.iter().enumerate() {
            out.push_str(&format_value(*v));
            if c + 1 < m {
                out.push(',');
            }
        }
        out.push('\n');
    }
    atomic_write(path, &out)
}

/// The drift strength is not part of the file; callers supply it, usually
/// from the generator metadata.
pub fn read_point_cloud_csv(
    path: impl AsRef<Path>,
    alpha_tilde: f64,
) -> Result<PointCloudWithField> {
    let path = path.as_ref();
    let content = read_to_string(path)?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() % 2 != 0 || columns.is_empty() {
        return Err(parse_err(
            path,
            1,
            "header must list coordinate columns then matching drift columns",
        ));
    }
    let m = columns.len() / 2;
    for (c, name) in columns.iter().enumerate() {
        let want = if c < m {
            format!("x{}", c + 1)
        } else {
            format!("w{}", c - m + 1)
        };
        if *name != want {
            return Err(parse_err(
                path,
                1,
                format!("expected column {want}, found {name}"),
            ));
        }
    }
    let mut point_rows = Vec::new();
    let mut drift_rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != 2 * m {
            return Err(parse_err(
                path,
                idx + 1,
                format!("expected {} values, found {}", 2 * m, tokens.len()),
            ));
        }
        let mut point = Vec::with_capacity(m);
        let mut drift = Vec::with_capacity(m);
        for (c, tok) in tokens.iter().enumerate() {
            let v = parse_value(path, idx + 1, tok)?;
            if c < m {
                point.push(v);
            } else {
                drift.push(v);
            }
        }
        point_rows.push(point);
        drift_rows.push(drift);
    }
    if point_rows.is_empty() {
        return Err(parse_err(path, 1, "no data rows"));
    }
    PointCloudWithField::new(
        DenseMatrix::from_rows(point_rows)?,
        DenseMatrix::from_rows(drift_rows)?,
        alpha_tilde,
    )
}

pub fn write_embedding_csv(path: impl AsRef<Path>, x: &Embedding) -> Result<()> {
    let mut out = String::new();
    for c in 0..x.dim() {
        let _ = write!(out, "x{}", c + 1);
        if c + 1 < x.dim() {
            out.push(',');
        }
    }
    out.push('\n');
    for i in 0..x.n() {
        for (c, v) in x.point(i).iter().enumerate() {
            out.push_str(&format_value(*v));
            if c + 1 < x.dim() {
                out.push(',');
            }
        }
        out.push('\n');
    }
    atomic_write(path, &out)
}

pub fn read_embedding_csv(path: impl AsRef<Path>) -> Result<Embedding> {
    let path = path.as_ref();
    let content = read_to_string(path)?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    for (c, name) in columns.iter().enumerate() {
        let want = format!("x{}", c + 1);
        if *name != want {
            return Err(parse_err(
                path,
                1,
                format!("expected column {want}, found {name}"),
            ));
        }
    }
    let m = columns.len();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != m {
            return Err(parse_err(
                path,
                idx + 1,
                format!("expected {m} values, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(m);
        for tok in tokens {
            row.push(parse_value(path, idx + 1, tok)?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(path, 1, "no data rows"));
    }
    Embedding::new(DenseMatrix::from_rows(rows)?)
}

pub fn write_graph_csv(path: impl AsRef<Path>, graph: &DirectedWeightedGraph) -> Result<()> {
    let mut out = format!("{},{}\n", graph.n(), graph.edge_count());
    for &(u, v, w) in graph.edges() {
        let _ = writeln!(out, "{u},{v},{}", format_value(w));
    }
    atomic_write(path, &out)
}

pub fn read_graph_csv(path: impl AsRef<Path>) -> Result<DirectedWeightedGraph> {
    let path = path.as_ref();
    let content = read_to_string(path)?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let dims: Vec<&str> = header.split(',').collect();
    if dims.len() != 2 {
        return Err(parse_err(path, 1, "expected header n_nodes,n_edges"));
    }
    let n: usize = dims[0]
        .trim()
        .parse()
        .map_err(|e| parse_err(path, 1, format!("bad node count: {e}")))?;
    let n_edges: usize = dims[1]
        .trim()
        .parse()
        .map_err(|e| parse_err(path, 1, format!("bad edge count: {e}")))?;
    let mut edges = Vec::with_capacity(n_edges);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() != 3 {
            return Err(parse_err(path, idx + 1, "expected src,dst,weight"));
        }
        let u: usize = tokens[0]
            .trim()
            .parse()
            .map_err(|e| parse_err(path, idx + 1, format!("bad source: {e}")))?;
        let v: usize = tokens[1]
            .trim()
            .parse()
            .map_err(|e| parse_err(path, idx + 1, format!("bad target: {e}")))?;
        let w = parse_value(path, idx + 1, tokens[2])?;
        edges.push((u, v, w));
    }
    if edges.len() != n_edges {
        return Err(parse_err(
            path,
            content.lines().count(),
            format!("header declares {n_edges} edges, found {}", edges.len()),
        ));
    }
    DirectedWeightedGraph::new(n, edges)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::invalid(format!("JSON serialization failed: {e}")))?;
    text.push('\n');
    atomic_write(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let content = read_to_string(path)?;
    serde_json::from_str(&content).map_err(|e| parse_err(path, e.line(), e.to_string()))
}
