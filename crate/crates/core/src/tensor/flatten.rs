use std::collections::{BTreeMap, VecDeque};

use crate::combinatorics::factorial;

use super::exact::ExactSum;

use super::UniformTensor;

/// Sparse symmetric `n x n` flattening matrix, rows stored as sorted
/// (column, value) lists. Each value is the correctly rounded sum of its
/// contributions.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatteningMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl FlatteningMatrix {
    pub(super) fn from_tensor(t: &UniformTensor) -> Self {
        let m = t.order();
        let mut acc: Vec<BTreeMap<usize, ExactSum>> = vec![BTreeMap::new(); t.dim()];
        let mut rest: Vec<u32> = Vec::with_capacity(m);
        for e in t.entries() {
            let s = e.nodes.len();
            for a in 0..s {
                for b in 0..s {
                    if a == b && e.mults[a] < 2 {
                        continue;
                    }
                    // arrangements of the remaining m-2 indices once i and j are fixed
                    rest.clear();
                    rest.extend_from_slice(e.mults);
                    rest[a] -= 1;
                    rest[b] -= 1;
                    let denom: f64 = rest.iter().map(|&k| factorial(k as usize)).product();
                    let count = factorial(m - 2) / denom;
                    acc[e.nodes[a] as usize]
                        .entry(e.nodes[b] as usize)
                        .or_default()
                        .add_product(e.value, count);
                }
            }
        }
        FlatteningMatrix {
            dim: t.dim(),
            rows: acc
                .into_iter()
                .map(|r| r.into_iter().map(|(j, s)| (j, s.value())).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| row[k].1)
            .unwrap_or(0.0)
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.dim]; self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                d[i][j] = v;
            }
        }
        d
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .all(|&(j, v)| (self.get(j, i) - v).abs() <= tol * v.abs().max(1.0))
        })
    }

    /// Irreducibility of a nonnegative matrix: its directed pattern graph is
    /// strongly connected. For a symmetric pattern one BFS suffices.
    pub fn is_irreducible(&self) -> bool {
        if self.dim <= 1 {
            return true;
        }
        let reach = |transpose: bool| {
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.dim];
            for (i, row) in self.rows.iter().enumerate() {
                for &(j, v) in row {
                    if v != 0.0 && i != j {
                        if transpose {
                            adj[j].push(i);
                        } else {
                            adj[i].push(j);
                        }
                    }
                }
            }
            let mut seen = vec![false; self.dim];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        queue.push_back(w);
                    }
                }
            }
            count == self.dim
        };
        reach(false) && reach(true)
    }
}
