use std::cmp::Ordering;

use super::RankError;

/// Canonical key: `-0.0` and `0.0` are one value.
fn key(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn cmp(a: f64, b: f64) -> Ordering {
    key(a).total_cmp(&key(b))
}

fn check(a: &[f64], b: &[f64]) -> Result<(), RankError> {
    if a.len() != b.len() {
        return Err(RankError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(RankError::TooShort(a.len()));
    }
    Ok(())
}

/// Pair counts behind tau-b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCounts {
    /// `n (n-1) / 2`.
    pub pairs: u64,
    /// Pairs tied in the first column.
    pub ties_a: u64,
    /// Pairs tied in the second column.
    pub ties_b: u64,
    /// Concordant minus discordant pairs.
    pub score: i64,
}

impl PairCounts {
    /// tau-b, or NaN when either column is constant.
    pub fn tau_b(&self) -> f64 {
        let (da, db) = (self.pairs - self.ties_a, self.pairs - self.ties_b);
        if da == 0 || db == 0 {
            return f64::NAN;
        }
        self.score as f64 / (da as f64 * db as f64).sqrt()
    }
}

fn tied_pairs(run: u64) -> u64 {
    run * run.saturating_sub(1) / 2
}

/// Sums `k(k-1)/2` over runs of equal values in an already sorted sequence.
fn tie_count(sorted: impl Iterator<Item = f64>) -> u64 {
    let mut total = 0;
    let mut run = 0u64;
    let mut prev: Option<f64> = None;
    for v in sorted {
        if prev.is_some_and(|p| cmp(p, v) == Ordering::Equal) {
            run += 1;
        } else {
            total += tied_pairs(run);
            run = 1;
        }
        prev = Some(v);
    }
    total + tied_pairs(run)
}

/// Bottom-up merge sort by `cmp`, returning the number of inversions.
fn sort_count_swaps(v: &mut Vec<f64>) -> u64 {
    let n = v.len();
    let mut buf = v.clone();
    let mut swaps = 0u64;
    let mut width = 1;
    while width < n {
        let mut start = 0;
        while start < n {
            let mid = (start + width).min(n);
            let end = (start + 2 * width).min(n);
            let (mut i, mut j, mut k) = (start, mid, start);
            while i < mid && j < end {
                if cmp(v[j], v[i]) == Ordering::Less {
                    swaps += (mid - i) as u64;
                    buf[k] = v[j];
                    j += 1;
                } else {
                    buf[k] = v[i];
                    i += 1;
                }
                k += 1;
            }
            buf[k..k + (mid - i)].copy_from_slice(&v[i..mid]);
            k += mid - i;
            buf[k..k + (end - j)].copy_from_slice(&v[j..end]);
            start = end;
        }
        std::mem::swap(v, &mut buf);
        width *= 2;
    }
    swaps
}

/// Pair counts in `O(n log n)`: sort by `(a, b)`, count joint ties, then
/// count the inversions a merge sort of the `b` column needs.
pub fn pair_counts(a: &[f64], b: &[f64]) -> Result<PairCounts, RankError> {
    check(a, b)?;
    let n = a.len() as u64;
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| cmp(a[i], a[j]).then(cmp(b[i], b[j])));

    let ties_a = tie_count(order.iter().map(|&i| a[i]));
    let mut joint = 0u64;
    let mut run = 1u64;
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        if cmp(a[i], a[j]) == Ordering::Equal && cmp(b[i], b[j]) == Ordering::Equal {
            run += 1;
        } else {
            joint += tied_pairs(run);
            run = 1;
        }
    }
    joint += tied_pairs(run);

    let mut col: Vec<f64> = order.iter().map(|&i| b[i]).collect();
    let swaps = sort_count_swaps(&mut col);
    let ties_b = tie_count(col.iter().copied());

    let pairs = n * (n - 1) / 2;
    let score = pairs as i64 - ties_a as i64 - ties_b as i64 + joint as i64 - 2 * swaps as i64;
    Ok(PairCounts { pairs, ties_a, ties_b, score })
}

/// Quadratic pair counts, used as an oracle.
pub fn pair_counts_brute(a: &[f64], b: &[f64]) -> Result<PairCounts, RankError> {
    check(a, b)?;
    let n = a.len();
    let (mut ties_a, mut ties_b, mut score) = (0u64, 0u64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let x = cmp(a[i], a[j]);
            let y = cmp(b[i], b[j]);
            if x == Ordering::Equal {
                ties_a += 1;
            }
            if y == Ordering::Equal {
                ties_b += 1;
            }
            if x != Ordering::Equal && y != Ordering::Equal {
                score += if x == y { 1 } else { -1 };
            }
        }
    }
    Ok(PairCounts {
        pairs: (n * (n - 1) / 2) as u64,
        ties_a,
        ties_b,
        score,
    })
}

/// Kendall tau-b. Returns NaN when either column is constant.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64, RankError> {
    pair_counts(a, b).map(|c| c.tau_b())
}

/// Kendall tau-b by direct pair enumeration.
pub fn kendall_tau_brute(a: &[f64], b: &[f64]) -> Result<f64, RankError> {
    pair_counts_brute(a, b).map(|c| c.tau_b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_cases() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(kendall_tau(&a, &a).unwrap(), 1.0);
        assert_eq!(kendall_tau(&a, &[4.0, 3.0, 2.0, 1.0]).unwrap(), -1.0);
        assert!(kendall_tau(&a, &[1.0; 4]).unwrap().is_nan());
        assert!(matches!(kendall_tau(&a, &a[..3]), Err(RankError::LengthMismatch(4, 3))));
        assert!(matches!(kendall_tau(&[1.0], &[1.0]), Err(RankError::TooShort(1))));
    }

    #[test]
    fn one_swap_of_four() {
        let t = kendall_tau(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 4.0, 3.0]).unwrap();
        assert!((t - 2.0 / 3.0).abs() < 1e-15);
        let c = pair_counts(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 4.0, 3.0]).unwrap();
        assert_eq!(c.score, 4);
    }

    #[test]
    fn signed_zero_is_one_value() {
        let c = pair_counts(&[0.0, -0.0, 1.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.ties_a, 1);
    }

    fn column(max: u32) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((0..max).prop_map(|v| v as f64 / 4.0), 2..200)
    }

    proptest! {
        #[test]
        fn merge_sort_equals_brute_force(a in column(30), seed in any::<u64>()) {
            let n = a.len();
            let b: Vec<f64> = (0..n).map(|i| ((i as u64 * 2654435761 + seed) % 23) as f64).collect();
            let fast = pair_counts(&a, &b).unwrap();
            let slow = pair_counts_brute(&a, &b).unwrap();
            prop_assert_eq!(fast, slow);
            let (x, y) = (fast.tau_b(), slow.tau_b());
            prop_assert!(x.to_bits() == y.to_bits());
        }

        #[test]
        fn symmetric_bounded_and_monotone_invariant(a in column(1000), b_raw in column(1000)) {
            let n = a.len().min(b_raw.len());
            let (a, b) = (&a[..n], &b_raw[..n]);
            prop_assume!(n >= 2);
            let t = kendall_tau(a, b).unwrap();
            let s = kendall_tau(b, a).unwrap();
            if t.is_nan() {
                prop_assert!(s.is_nan());
            } else {
                prop_assert_eq!(t, s);
                prop_assert!((-1.0..=1.0).contains(&t));
                let warped: Vec<f64> = a.iter().map(|v| (v * 3.0 + 1.0).powi(3)).collect();
                prop_assert_eq!(kendall_tau(&warped, b).unwrap(), t);
            }
        }
    }
}
