//! Graph file I/O: a plain edge-list format and Matrix Market coordinate
//! files. Weights are written with 17 significant digits, so write-then-read
//! reproduces the canonical representation bit for bit.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::WeightedGraph;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Graph(#[from] crate::error::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// Optional "n m" header, then "u v w" lines, 0-indexed, '#' comments.
    EdgeList,
    /// Matrix Market coordinate real symmetric, 1-indexed.
    MatrixMarket,
}

impl GraphFormat {
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::EdgeList,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_graph(path: &Path) -> IoResult<WeightedGraph> {
    let file = std::fs::File::open(path)?;
    read_graph_from(BufReader::new(file), GraphFormat::from_path(path))
}

pub fn read_graph_from<R: Read>(reader: R, format: GraphFormat) -> IoResult<WeightedGraph> {
    match format {
        GraphFormat::EdgeList => read_edge_list(reader),
        GraphFormat::MatrixMarket => read_matrix_market(reader),
    }
}

pub fn write_graph(path: &Path, g: &WeightedGraph) -> IoResult<()> {
    let format = GraphFormat::from_path(path);
    let mut buf = Vec::new();
    write_graph_to(&mut buf, g, format)?;
    atomic_write(path, &buf)?;
    Ok(())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> IoResult<()> {
    let tmp = path.with_extension(match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{ext}.tmp"),
        None => "tmp".to_string(),
    });
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_graph_to<W: Write>(
    writer: &mut W,
    g: &WeightedGraph,
    format: GraphFormat,
) -> IoResult<()> {
    let mut out = String::new();
    match format {
        GraphFormat::EdgeList => {
            writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
            for e in g.edges() {
                writeln!(out, "{} {} {:.16e}", e.u, e.v, e.w).unwrap();
            }
        }
        GraphFormat::MatrixMarket => {
            writeln!(out, "%%MatrixMarket matrix coordinate real symmetric").unwrap();
            writeln!(out, "{} {} {}", g.n(), g.n(), g.edge_count()).unwrap();
            for e in g.edges() {
                // Lower triangle: row > column, 1-indexed.
                writeln!(out, "{} {} {:.16e}", e.v + 1, e.u + 1, e.w).unwrap();
            }
        }
    }
    writer.write_all(out.as_bytes())?;
    Ok(())
}

fn read_edge_list<R: Read>(reader: R) -> IoResult<WeightedGraph> {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut saw_data_line = false;
    let mut max_vertex = 0usize;

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields.len() {
            2 if !saw_data_line && header.is_none() => {
                let n = fields[0]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad vertex count: {e}")))?;
                let m = fields[1]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad edge count: {e}")))?;
                header = Some((n, m));
            }
            3 => {
                saw_data_line = true;
                let u = fields[0]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad vertex id: {e}")))?;
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|e| parse_err(lineno, format!("bad vertex id: {e}")))?;
                let w = fields[2]
                    .parse::<f64>()
                    .map_err(|e| parse_err(lineno, format!("bad weight: {e}")))?;
                max_vertex = max_vertex.max(u).max(v);
                edges.push((u, v, w));
            }
            k => {
                return Err(parse_err(
                    lineno,
                    format!("expected 'u v w' (or a single 'n m' header), got {k} fields"),
                ));
            }
        }
    }
    let n = match header {
        Some((n, m)) => {
            if m != edges.len() {
                return Err(parse_err(
                    0,
                    format!("header says {m} edges, file has {}", edges.len()),
                ));
            }
            n
        }
        None => {
            if edges.is_empty() {
                0
            } else {
                max_vertex + 1
            }
        }
    };
    Ok(WeightedGraph::build(n, edges)?)
}

fn read_matrix_market<R: Read>(reader: R) -> IoResult<WeightedGraph> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (first_no, first) = match lines.next() {
        Some((i, l)) => (i + 1, l?),
        None => return Err(parse_err(0, "empty file")),
    };
    let banner: Vec<String> = first.split_whitespace().map(|s| s.to_lowercase()).collect();
    if banner.len() < 5 || banner[0] != "%%matrixmarket" {
        return Err(parse_err(first_no, "missing MatrixMarket banner"));
    }
    if banner[1] != "matrix" || banner[2] != "coordinate" {
        return Err(parse_err(
            first_no,
            "only coordinate matrices are supported",
        ));
    }
    if banner[3] != "real" && banner[3] != "integer" {
        return Err(parse_err(
            first_no,
            "only real/integer entries are supported",
        ));
    }
    if banner[4] != "symmetric" {
        return Err(parse_err(
            first_no,
            format!("matrix must be symmetric, got '{}'", banner[4]),
        ));
    }

    let mut size: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if size.is_none() {
            if fields.len() != 3 {
                return Err(parse_err(lineno, "expected 'rows cols nnz'"));
            }
            let rows = fields[0]
                .parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad rows: {e}")))?;
            let cols = fields[1]
                .parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad cols: {e}")))?;
            let nnz = fields[2]
                .parse::<usize>()
                .map_err(|e| parse_err(lineno, format!("bad nnz: {e}")))?;
            if rows != cols {
                return Err(parse_err(lineno, "adjacency matrix must be square"));
            }
            size = Some((rows, cols, nnz));
            continue;
        }
        if fields.len() != 3 {
            return Err(parse_err(lineno, "expected 'i j w'"));
        }
        let i = fields[0]
            .parse::<usize>()
            .map_err(|e| parse_err(lineno, format!("bad row: {e}")))?;
        let j = fields[1]
            .parse::<usize>()
            .map_err(|e| parse_err(lineno, format!("bad col: {e}")))?;
        let w = fields[2]
            .parse::<f64>()
            .map_err(|e| parse_err(lineno, format!("bad weight: {e}")))?;
        if i == 0 || j == 0 {
            return Err(parse_err(lineno, "Matrix Market indices are 1-based"));
        }
        if i == j {
            return Err(parse_err(lineno, "self-loops are not supported"));
        }
        edges.push((i - 1, j - 1, w));
    }
    let (n, _, nnz) = size.ok_or_else(|| parse_err(0, "missing size line"))?;
    if nnz != edges.len() {
        return Err(parse_err(
            0,
            format!("size line says {nnz} entries, file has {}", edges.len()),
        ));
    }
    Ok(WeightedGraph::build(n, edges)?)
}
