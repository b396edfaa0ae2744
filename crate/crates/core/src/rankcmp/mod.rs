//! Ranking alignment and rank-correlation analysis.
//!
//! Score columns from different methods are aligned on the union of their
//! node labels ([`RankingTable`], zero-filling absent nodes), then compared
//! with Kendall's tau-b as a whole ([`pairwise_heatmap`]) or restricted to
//! the top-K nodes of one method ([`topk_curve`]).

mod curves;
mod tau;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::numfmt::sig;

pub use curves::{curve_filter, curves_csv, family_of, topk_curve, TopKCurve, TopKPoint};
pub use tau::{kendall_tau, kendall_tau_brute, pair_counts, pair_counts_brute, PairCounts};

#[derive(Debug, Error, PartialEq)]
pub enum RankError {
    #[error("score columns have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two scores, got {0}")]
    TooShort(usize),
    #[error("unknown method column {0:?}")]
    UnknownColumn(String),
    #[error("duplicate method column {0:?}")]
    DuplicateColumn(String),
    #[error("column {column:?} has {scores} scores for {labels} labels")]
    LabelMismatch { column: String, labels: usize, scores: usize },
    #[error("K = {k} exceeds the table size {size}")]
    KTooLarge { k: usize, size: usize },
    #[error("K values must be sorted ascending")]
    UnsortedK,
}

/// One aligned score column.
#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub tag: String,
    pub scores: Vec<f64>,
    /// `true` where the node was absent from this method and zero-filled.
    pub filled: Vec<bool>,
}

impl Column {
    pub fn filled_count(&self) -> usize {
        self.filled.iter().filter(|&&f| f).count()
    }
}

/// Score columns aligned on the union of node labels.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RankingTable {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    columns: Vec<Column>,
}

impl RankingTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a method's (label, score) column. New labels extend every
    /// existing column with zero-filled entries.
    pub fn add_column(&mut self, tag: &str, labels: &[String], scores: &[f64]) -> Result<(), RankError> {
        if self.columns.iter().any(|c| c.tag == tag) {
            return Err(RankError::DuplicateColumn(tag.to_string()));
        }
        if labels.len() != scores.len() {
            return Err(RankError::LabelMismatch {
                column: tag.to_string(),
                labels: labels.len(),
                scores: scores.len(),
            });
        }
        for l in labels {
            if !self.index.contains_key(l) {
                self.index.insert(l.clone(), self.labels.len());
                self.labels.push(l.clone());
                for c in &mut self.columns {
                    c.scores.push(0.0);
                    c.filled.push(true);
                }
            }
        }
        let mut col = Column {
            tag: tag.to_string(),
            scores: vec![0.0; self.labels.len()],
            filled: vec![true; self.labels.len()],
        };
        for (l, &s) in labels.iter().zip(scores) {
            let i = self.index[l];
            col.scores[i] = s;
            col.filled[i] = false;
        }
        self.columns.push(col);
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn tags(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.tag.as_str()).collect()
    }

    pub fn column(&self, tag: &str) -> Result<&Column, RankError> {
        self.columns
            .iter()
            .find(|c| c.tag == tag)
            .ok_or_else(|| RankError::UnknownColumn(tag.to_string()))
    }
}

/// Symmetric matrix of whole-ranking tau-b values between table columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Heatmap {
    pub tags: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl Heatmap {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.tags.iter().position(|t| t == a)?;
        let j = self.tags.iter().position(|t| t == b)?;
        Some(self.values[i][j])
    }

    /// Square CSV with a header row and a leading column of method tags.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method");
        for t in &self.tags {
            out.push(',');
            out.push_str(t);
        }
        out.push('\n');
        for (t, row) in self.tags.iter().zip(&self.values) {
            out.push_str(t);
            for &v in row {
                out.push(',');
                out.push_str(&sig(v, 12));
            }
            out.push('\n');
        }
        out
    }
}

/// tau-b between every pair of columns, computed in parallel over pairs.
/// Constant columns produce NaN entries, including on the diagonal.
pub fn pairwise_heatmap(t: &RankingTable) -> Result<Heatmap, RankError> {
    let k = t.columns.len();
    if k < 2 {
        return Err(RankError::TooShort(k));
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let taus: Vec<Result<f64, RankError>> = pairs
        .par_iter()
        .map(|&(i, j)| kendall_tau(&t.columns[i].scores, &t.columns[j].scores))
        .collect();
    let mut values = vec![vec![0.0; k]; k];
    for (&(i, j), tau) in pairs.iter().zip(taus) {
        let v = tau?;
        values[i][j] = v;
        values[j][i] = v;
    }
    Ok(Heatmap {
        tags: t.columns.iter().map(|c| c.tag.clone()).collect(),
        values,
    })
}
