//! Implicit symmetric adjacency tensors.
//!
//! A [`UniformTensor`] of order `m` and dimension `n` is stored as a list of
//! (support multiset, value) entries. It stands for the fully symmetric tensor
//! whose component at every index tuple with that support equals `value`, and
//! zero elsewhere. Nothing here materializes the `n^m` array except
//! [`dense::DenseTensor`], which exists to check the implicit routines.

pub mod dense;
mod exact;
mod flatten;
mod score;

use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{factorial, MAX_ORDER};
use crate::hypercore::{DisjointSet, Hypergraph, NodeId, Support};

pub use flatten::FlatteningMatrix;
pub use score::{Normalization, ScoreVector};

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("hypergraph is not uniform; uniformize it first")]
    NotUniform,
    #[error("cannot build a tensor from a hypergraph without edges")]
    Empty,
    #[error("tensor order {0} is outside 2..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("entry of size {got} in a tensor of order {order}")]
    EntrySize { order: usize, got: usize },
    #[error("entry value must be positive and finite, got {0}")]
    InvalidValue(f64),
    #[error("entry references index {index} in a tensor of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("vector has length {got}, tensor dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dense materialization needs {dim}^{order} components, above the limit of {limit}")]
    TooLargeForDense { dim: usize, order: usize, limit: usize },
}

/// Entries per chunk when `apply` runs in parallel. Fixed so the reduction
/// order, and hence the result, does not depend on the thread count.
const APPLY_CHUNK: usize = 8192;

/// Order-`m`, dimension-`n` symmetric nonnegative tensor in support form.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformTensor {
    order: usize,
    dim: usize,
    offsets: Vec<usize>,
    nodes: Vec<u32>,
    mults: Vec<u32>,
    values: Vec<f64>,
    /// `value * (m-1)! / prod(mult!)`, the shared part of every arrangement count.
    coef: Vec<f64>,
}

/// Borrowed view of one tensor entry.
#[derive(Clone, Copy, Debug)]
pub struct Entry<'a> {
    pub nodes: &'a [u32],
    pub mults: &'a [u32],
    pub value: f64,
}

impl Entry<'_> {
    pub fn support(&self) -> Support {
        Support::from_multiplicities(
            self.nodes
                .iter()
                .zip(self.mults)
                .map(|(&v, &k)| (NodeId(v as usize), k)),
        )
    }
}

impl UniformTensor {
    /// Builds a tensor from (support, value) pairs. Repeated supports add up.
    pub fn new(order: usize, dim: usize, entries: Vec<(Support, f64)>) -> Result<Self, TensorError> {
        if !(2..=MAX_ORDER).contains(&order) {
            return Err(TensorError::OrderOutOfRange(order));
        }
        let mut merged: Vec<(Support, f64)> = Vec::with_capacity(entries.len());
        let mut slot = std::collections::HashMap::with_capacity(entries.len());
        for (support, value) in entries {
            if support.size() != order {
                return Err(TensorError::EntrySize { order, got: support.size() });
            }
            if !(value.is_finite() && value > 0.0) {
                return Err(TensorError::InvalidValue(value));
            }
            if let Some(v) = support.nodes().find(|v| v.0 >= dim) {
                return Err(TensorError::IndexOutOfRange { index: v.0, dim });
            }
            match slot.get(&support) {
                Some(&i) => {
                    let e: &mut (Support, f64) = &mut merged[i];
                    e.1 += value;
                }
                None => {
                    slot.insert(support.clone(), merged.len());
                    merged.push((support, value));
                }
            }
        }
        let mut t = UniformTensor {
            order,
            dim,
            offsets: Vec::with_capacity(merged.len() + 1),
            nodes: Vec::new(),
            mults: Vec::new(),
            values: Vec::with_capacity(merged.len()),
            coef: Vec::with_capacity(merged.len()),
        };
        t.offsets.push(0);
        let lead = factorial(order - 1);
        for (support, value) in merged {
            let mut denom = 1.0;
            for (v, k) in support.iter() {
                t.nodes.push(v.0 as u32);
                t.mults.push(k);
                denom *= factorial(k as usize);
            }
            t.offsets.push(t.nodes.len());
            t.values.push(value);
            t.coef.push(value * lead / denom);
        }
        Ok(t)
    }

    /// Adjacency tensor of a uniform hypergraph: one entry per edge, with the
    /// edge weight as component value. Auxiliary nodes are ordinary indices.
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self, TensorError> {
        let order = h.uniform_order().ok_or(if h.is_empty() {
            TensorError::Empty
        } else {
            TensorError::NotUniform
        })?;
        let entries = h
            .edges()
            .iter()
            .map(|e| (e.support.clone(), e.weight))
            .collect();
        Self::new(order, h.n(), entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entry(&self, k: usize) -> Entry<'_> {
        let r = self.offsets[k]..self.offsets[k + 1];
        Entry {
            nodes: &self.nodes[r.clone()],
            mults: &self.mults[r],
            value: self.values[k],
        }
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = Entry<'_>> + '_ {
        (0..self.len()).map(move |k| self.entry(k))
    }

    /// Same tensor with every value multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut t = self.clone();
        t.values.iter_mut().for_each(|v| *v *= factor);
        t.coef.iter_mut().for_each(|v| *v *= factor);
        t
    }

    /// Tensor apply `y = T x^{m-1}`, i.e. `y_i = sum T[i,i2..im] x_i2 ... x_im`.
    ///
    /// Each entry contributes to every member `i` of its support
    /// `value * N(e,i) * prod_j x_j^(mu_j - [j = i])`, where
    /// `N(e,i) = (m-1)! mu_i / prod_j mu_j!` counts the arrangements of the
    /// other `m-1` indices. Signed `x` is allowed.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_len(x)?;
        let mut y = vec![0.0; self.dim];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn check_len(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.dim {
            return Err(TensorError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Unchecked apply into a caller-provided buffer (overwritten).
    pub(crate) fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        let len = self.len();
        if len < 2 * APPLY_CHUNK {
            self.accumulate(0..len, x, y);
            return;
        }
        let chunks: Vec<std::ops::Range<usize>> = (0..len)
            .step_by(APPLY_CHUNK)
            .map(|s| s..(s + APPLY_CHUNK).min(len))
            .collect();
        let partials: Vec<Vec<f64>> = chunks
            .into_par_iter()
            .map(|r| {
                let mut buf = vec![0.0; self.dim];
                self.accumulate(r, x, &mut buf);
                buf
            })
            .collect();
        for part in partials {
            for (acc, v) in y.iter_mut().zip(part) {
                *acc += v;
            }
        }
    }

    fn accumulate(&self, range: std::ops::Range<usize>, x: &[f64], y: &mut [f64]) {
        let mut full = [0.0f64; MAX_ORDER];
        let mut prefix = [0.0f64; MAX_ORDER + 1];
        for k in range {
            let (lo, hi) = (self.offsets[k], self.offsets[k + 1]);
            let nodes = &self.nodes[lo..hi];
            let mults = &self.mults[lo..hi];
            let s = nodes.len();
            prefix[0] = 1.0;
            for j in 0..s {
                full[j] = x[nodes[j] as usize].powi(mults[j] as i32);
                prefix[j + 1] = prefix[j] * full[j];
            }
            let coef = self.coef[k];
            let mut suffix = 1.0;
            for j in (0..s).rev() {
                let xi = x[nodes[j] as usize];
                let own = xi.powi(mults[j] as i32 - 1);
                y[nodes[j] as usize] += coef * mults[j] as f64 * own * prefix[j] * suffix;
                suffix *= full[j];
            }
        }
    }

    /// Connectivity of the nonzero pattern of the flattening matrix, checked by
    /// union-find over entry supports.
    pub fn is_weakly_irreducible(&self) -> bool {
        if self.dim <= 1 {
            return true;
        }
        let mut dsu = DisjointSet::new(self.dim);
        let mut merges = 0;
        for e in self.entries() {
            for &v in &e.nodes[1..] {
                if dsu.union(e.nodes[0] as usize, v as usize) {
                    merges += 1;
                }
            }
        }
        merges == self.dim - 1
    }

    /// The `n x n` matrix `M_ij = sum_{j3..jm} T[i,j,j3..jm]`.
    pub fn flattening_matrix(&self) -> FlatteningMatrix {
        FlatteningMatrix::from_tensor(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniformize::uplift;

    fn small_mixed_uplifted() -> UniformTensor {
        let h = Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4], &[3, 5]]);
        UniformTensor::from_hypergraph(&uplift(&h, 3).unwrap()).unwrap()
    }

    #[test]
    fn entries_of_uplifted_small_mixed() {
        let t = small_mixed_uplifted();
        assert_eq!((t.order(), t.dim(), t.len()), (3, 6, 3));
        let values: Vec<f64> = t.entries().map(|e| e.value).collect();
        assert_eq!(values, vec![1.0, 1.0 / 3.0, 1.0 / 3.0]);
        assert_eq!(t.entry(1).nodes, &[1, 3, 5]);
    }

    #[test]
    fn apply_counts_arrangements() {
        let t = small_mixed_uplifted();
        let y = t.apply(&[1.0; 6]).unwrap();
        // node 2 (index 1): {1,2,3} gives 2, {2,4,*} gives 2 * 1/3
        assert!((y[1] - (2.0 + 2.0 / 3.0)).abs() < 1e-15);
        // node 4 (index 3) only sees {2,4,*}
        assert!((y[3] - 2.0 / 3.0).abs() < 1e-15);
        // * sees both padded edges
        assert!((y[5] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn order_two_is_matrix_vector_product() {
        let h = Hypergraph::from_simplices([&[1u64, 2][..], &[2, 3]]);
        let t = UniformTensor::from_hypergraph(&h).unwrap();
        let y = t.apply(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(y, vec![2.0, 4.0, 2.0]);
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let t = small_mixed_uplifted();
        assert!(t.apply(&[0.0; 6]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn repeated_supports_add() {
        let s = Support::from_nodes([NodeId(0), NodeId(1)]);
        let t = UniformTensor::new(2, 2, vec![(s.clone(), 1.0), (s, 0.5)]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.entry(0).value, 1.5);
    }

    #[test]
    fn errors() {
        let t = small_mixed_uplifted();
        assert_eq!(
            t.apply(&[1.0; 3]).unwrap_err(),
            TensorError::DimensionMismatch { expected: 6, got: 3 }
        );
        let h = Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4]]);
        assert_eq!(UniformTensor::from_hypergraph(&h).unwrap_err(), TensorError::NotUniform);
        let empty = Hypergraph::from_simplices(Vec::<Vec<u64>>::new());
        assert_eq!(UniformTensor::from_hypergraph(&empty).unwrap_err(), TensorError::Empty);
        let s = Support::from_nodes([NodeId(0), NodeId(1)]);
        assert!(matches!(UniformTensor::new(3, 2, vec![(s.clone(), 1.0)]), Err(TensorError::EntrySize { .. })));
        assert!(matches!(UniformTensor::new(2, 1, vec![(s.clone(), 1.0)]), Err(TensorError::IndexOutOfRange { .. })));
        assert!(matches!(UniformTensor::new(2, 2, vec![(s.clone(), -1.0)]), Err(TensorError::InvalidValue(_))));
        assert!(matches!(UniformTensor::new(21, 2, vec![]), Err(TensorError::OrderOutOfRange(21))));
    }

    #[test]
    fn irreducibility_follows_connectivity() {
        assert!(small_mixed_uplifted().is_weakly_irreducible());
        let h = Hypergraph::from_simplices([&[1u64, 2][..], &[3, 4]]);
        assert!(!UniformTensor::from_hypergraph(&h).unwrap().is_weakly_irreducible());
    }

    #[test]
    fn parallel_apply_matches_serial() {
        // a long cycle with chords, large enough to take the chunked path
        let n = 5000u64;
        let mut simplices = Vec::new();
        for i in 0..n {
            simplices.push(vec![i, (i + 1) % n, (i + 7) % n]);
            simplices.push(vec![i, (i + 3) % n, (i + 11) % n]);
            simplices.push(vec![i, (i + 5) % n, (i + 13) % n]);
            simplices.push(vec![i, (i + 17) % n, (i + 29) % n]);
        }
        let h = Hypergraph::from_simplices(&simplices);
        let t = UniformTensor::from_hypergraph(&h).unwrap();
        assert!(t.len() >= 2 * APPLY_CHUNK);
        let x: Vec<f64> = (0..t.dim()).map(|i| 1.0 + (i % 17) as f64 / 7.0).collect();
        let mut serial = vec![0.0; t.dim()];
        t.accumulate(0..t.len(), &x, &mut serial);
        let par = t.apply(&x).unwrap();
        for (a, b) in serial.iter().zip(&par) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
        assert_eq!(par, t.apply(&x).unwrap());
    }
}
