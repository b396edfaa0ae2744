//! Brute-force dense materialization, used only to verify the implicit
//! routines on small instances.
//!
//! The dense array is filled by visiting every one of the `n^m` index tuples,
//! sorting it, and looking the sorted tuple up among the entry supports. No
//! arrangement counts are computed, so the contraction below is independent of
//! the closed-form counts used by [`super::UniformTensor::apply`].

use std::collections::HashMap;

use super::exact::ExactSum;
use super::{TensorError, UniformTensor};

/// Upper bound on the number of materialized components.
pub const DENSE_LIMIT: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn from_tensor(t: &UniformTensor) -> Result<Self, TensorError> {
        let (order, dim) = (t.order(), t.dim());
        let too_large = TensorError::TooLargeForDense { dim, order, limit: DENSE_LIMIT };
        let size = (0..order).try_fold(1usize, |acc, _| {
            acc.checked_mul(dim).filter(|&s| s <= DENSE_LIMIT)
        });
        let size = size.ok_or(too_large)?;

        let mut lookup: HashMap<Vec<usize>, f64> = HashMap::new();
        for e in t.entries() {
            let mut key = Vec::with_capacity(order);
            for (&v, &k) in e.nodes.iter().zip(e.mults) {
                key.extend(std::iter::repeat_n(v as usize, k as usize));
            }
            key.sort_unstable();
            *lookup.entry(key).or_insert(0.0) += e.value;
        }

        let mut data = vec![0.0; size];
        let mut idx = vec![0usize; order];
        let mut sorted = vec![0usize; order];
        for slot in data.iter_mut() {
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            if let Some(&v) = lookup.get(&sorted) {
                *slot = v;
            }
            // odometer increment, last index fastest
            for pos in (0..order).rev() {
                idx[pos] += 1;
                if idx[pos] < dim {
                    break;
                }
                idx[pos] = 0;
            }
        }
        Ok(DenseTensor { order, dim, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn linear(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.linear(idx)]
    }

    pub fn nonzeros(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    fn tuples(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let (order, dim) = (self.order, self.dim);
        self.data.iter().enumerate().map(move |(mut lin, &v)| {
            let mut idx = vec![0; order];
            for pos in (0..order).rev() {
                idx[pos] = lin % dim;
                lin /= dim;
            }
            (idx, v)
        })
    }

    /// `y_i = sum_{i2..im} T[i,i2..im] x_i2 ... x_im` by exhaustive summation.
    pub fn contract(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for (idx, v) in self.tuples() {
            if v == 0.0 {
                continue;
            }
            let prod: f64 = idx[1..].iter().map(|&j| x[j]).product();
            y[idx[0]] += v * prod;
        }
        y
    }

    /// `M_ij = sum_{j3..jm} |T[i,j,j3..jm]|` by exhaustive, correctly rounded
    /// summation.
    pub fn flattening(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![ExactSum::default(); self.dim]; self.dim];
        for (idx, v) in self.tuples() {
            if v != 0.0 {
                m[idx[0]][idx[1]].add(v.abs());
            }
        }
        m.iter().map(|row| row.iter().map(ExactSum::value).collect()).collect()
    }

    /// True when every component equals the component at each permutation of
    /// its index tuple (checked via adjacent transpositions).
    pub fn is_symmetric(&self) -> bool {
        self.tuples().all(|(idx, v)| {
            (0..self.order.saturating_sub(1)).all(|p| {
                let mut swapped = idx.clone();
                swapped.swap(p, p + 1);
                self.get(&swapped) == v
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::Hypergraph;
    use crate::uniformize::uplift;

    #[test]
    fn uplifted_small_mixed_has_eighteen_nonzeros() {
        let h = Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4], &[3, 5]]);
        let t = UniformTensor::from_hypergraph(&uplift(&h, 3).unwrap()).unwrap();
        let d = DenseTensor::from_tensor(&t).unwrap();
        assert_eq!(d.len(), 216);
        assert_eq!(d.nonzeros(), 18);
        assert!(d.is_symmetric());
        assert_eq!(d.get(&[1, 5, 3]), 1.0 / 3.0);
        assert_eq!(d.get(&[2, 0, 1]), 1.0);
    }

    #[test]
    fn size_guard() {
        let n = 200u64;
        let simplices: Vec<Vec<u64>> = (0..n).map(|i| vec![i, (i + 1) % n, (i + 2) % n, (i + 3) % n]).collect();
        let t = UniformTensor::from_hypergraph(&Hypergraph::from_simplices(&simplices)).unwrap();
        assert!(matches!(
            DenseTensor::from_tensor(&t),
            Err(TensorError::TooLargeForDense { dim: 200, order: 4, .. })
        ));
    }
}
