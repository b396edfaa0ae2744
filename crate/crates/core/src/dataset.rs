//! Reader for simplicial datasets stored as integer streams: a `nverts` file
//! (one simplex size per entry), a `simplices` file (the concatenated node
//! ids) and an optional node-label file (`id<whitespace>label` per line).
//! Timestamp files of the same layout are not needed and never read.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::hypercore::{HyperEdge, Hypergraph, HypergraphBuilder, HypergraphError, PreprocessReport};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0} is empty")]
    Empty(String),
    #[error("{file}, line {line}: {token:?} is not a nonnegative integer")]
    BadToken { file: String, line: usize, token: String },
    #[error("simplex sizes add up to {expected} but {got} node ids were given")]
    CountMismatch { expected: u64, got: usize },
    #[error("{file}, line {line}: expected `id label`")]
    BadLabelLine { file: String, line: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// How repeated simplices enter the edge weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    /// Weight = number of times the simplex was listed.
    #[default]
    Count,
    /// Every distinct edge has weight one.
    Unit,
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub hypergraph: Hypergraph,
    pub report: PreprocessReport,
}

fn read(path: &Path) -> Result<String, DatasetError> {
    fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Whitespace-separated nonnegative integers. `file` names the source in errors.
pub fn parse_ints(text: &str, file: &str) -> Result<Vec<u64>, DatasetError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let v = tok.parse::<u64>().map_err(|_| DatasetError::BadToken {
                file: file.to_string(),
                line: ln + 1,
                token: tok.to_string(),
            })?;
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(DatasetError::Empty(file.to_string()));
    }
    Ok(out)
}

/// `id label` lines; the label is the rest of the line after the first run of
/// whitespace. Blank lines are skipped.
pub fn parse_labels(text: &str, file: &str) -> Result<HashMap<u64, String>, DatasetError> {
    let mut out = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let bad = || DatasetError::BadLabelLine {
            file: file.to_string(),
            line: ln + 1,
        };
        let (id, label) = line.trim_start().split_once(char::is_whitespace).ok_or_else(bad)?;
        let id: u64 = id.parse().map_err(|_| bad())?;
        let label = label.trim();
        if label.is_empty() {
            return Err(bad());
        }
        out.insert(id, label.to_string());
    }
    Ok(out)
}

/// Decodes the two integer streams and runs the preprocessing pipeline.
pub fn decode(nverts: &[u64], simplices: &[u64], weighting: Weighting) -> Result<Dataset, DatasetError> {
    let expected: u64 = nverts.iter().sum();
    if expected != simplices.len() as u64 {
        return Err(DatasetError::CountMismatch {
            expected,
            got: simplices.len(),
        });
    }
    let mut b = HypergraphBuilder::new();
    let mut at = 0usize;
    for &k in nverts {
        let k = k as usize;
        b.add_simplex(&simplices[at..at + k], 1.0);
        at += k;
    }
    let (mut hypergraph, report) = b.build();
    if weighting == Weighting::Unit {
        let edges = hypergraph
            .edges()
            .iter()
            .map(|e| HyperEdge::new(e.support.clone(), 1.0))
            .collect();
        hypergraph = Hypergraph::new(hypergraph.labels().to_vec(), edges, hypergraph.aux().clone())?;
    }
    Ok(Dataset { hypergraph, report })
}

/// Replaces numeric-id labels by names; ids without a name keep their number.
pub fn apply_labels(h: &Hypergraph, names: &HashMap<u64, String>) -> Result<Hypergraph, DatasetError> {
    let labels = h
        .labels()
        .iter()
        .map(|l| match l.parse::<u64>().ok().and_then(|id| names.get(&id)) {
            Some(name) => name.clone(),
            None => l.clone(),
        })
        .collect();
    Ok(Hypergraph::new(labels, h.edges().to_vec(), h.aux().clone())?)
}

/// Reads and decodes a dataset from disk.
pub fn read_simplicial(
    nverts: &Path,
    simplices: &Path,
    labels: Option<&Path>,
    weighting: Weighting,
) -> Result<Dataset, DatasetError> {
    let nv = parse_ints(&read(nverts)?, &nverts.display().to_string())?;
    let sx = parse_ints(&read(simplices)?, &simplices.display().to_string())?;
    let mut ds = decode(&nv, &sx, weighting)?;
    if let Some(path) = labels {
        let names = parse_labels(&read(path)?, &path.display().to_string())?;
        ds.hypergraph = apply_labels(&ds.hypergraph, &names)?;
    }
    Ok(ds)
}

/// Locates `<prefix>-nverts.txt`, `<prefix>-simplices.txt` and, if present,
/// `<prefix>-node-labels.txt` in `dir`, where `prefix` is the directory name.
pub fn locate(dir: &Path) -> Option<(PathBuf, PathBuf, Option<PathBuf>)> {
    let prefix = dir.file_name()?.to_str()?;
    let file = |suffix: &str| dir.join(format!("{prefix}-{suffix}.txt"));
    let (nv, sx, lb) = (file("nverts"), file("simplices"), file("node-labels"));
    if nv.is_file() && sx.is_file() {
        Some((nv, sx, lb.is_file().then_some(lb)))
    } else {
        None
    }
}
