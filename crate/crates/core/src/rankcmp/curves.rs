use crate::numfmt::sig;

use super::{kendall_tau, RankError, RankingTable};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TopKPoint {
    pub k: usize,
    /// Number of nodes actually compared: `k` plus any nodes tied with the
    /// `k`-th score.
    pub size: usize,
    pub tau: f64,
}

/// tau-b between method `a` and method `b` over the top-K nodes of `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TopKCurve {
    pub a: String,
    pub b: String,
    pub points: Vec<TopKPoint>,
}

impl TopKCurve {
    fn finite(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.tau).filter(|t| t.is_finite())
    }

    pub fn max(&self) -> Option<f64> {
        self.finite().reduce(f64::max)
    }

    pub fn min(&self) -> Option<f64> {
        self.finite().reduce(f64::min)
    }

    pub fn mean(&self) -> Option<f64> {
        let (s, n) = self.finite().fold((0.0, 0usize), |(s, n), t| (s + t, n + 1));
        (n > 0).then(|| s / n as f64)
    }
}

/// For each K in `ks` (ascending), takes the K highest-scored nodes of
/// column `a`, extended by every node tied with the K-th score, and computes
/// tau-b of the `a` and `b` scores on that set. `K < 2` is skipped.
pub fn topk_curve(t: &RankingTable, a: &str, b: &str, ks: &[usize]) -> Result<TopKCurve, RankError> {
    let ca = &t.column(a)?.scores;
    let cb = &t.column(b)?.scores;
    if ks.windows(2).any(|w| w[0] > w[1]) {
        return Err(RankError::UnsortedK);
    }
    let mut order: Vec<usize> = (0..ca.len()).collect();
    order.sort_by(|&i, &j| ca[j].total_cmp(&ca[i]).then(i.cmp(&j)));

    let mut points = Vec::new();
    for &k in ks {
        if k > ca.len() {
            return Err(RankError::KTooLarge { k, size: ca.len() });
        }
        if k < 2 {
            continue;
        }
        let cut = ca[order[k - 1]];
        let size = k + order[k..].iter().take_while(|&&i| ca[i] == cut).count();
        let xa: Vec<f64> = order[..size].iter().map(|&i| ca[i]).collect();
        let xb: Vec<f64> = order[..size].iter().map(|&i| cb[i]).collect();
        points.push(TopKPoint { k, size, tau: kendall_tau(&xa, &xb)? });
    }
    Ok(TopKCurve {
        a: a.to_string(),
        b: b.to_string(),
        points,
    })
}

/// Method family of a tag: its leading letters, lowercased (`u3` -> `u`).
pub fn family_of(tag: &str) -> String {
    tag.chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect::<String>()
        .to_ascii_lowercase()
}

/// Keeps, per family pair `(family_of(a), family_of(b))`, the curve with the
/// highest maximum, the one with the lowest minimum, and those with the
/// lowest and highest mean. Ties go to the earlier curve; a curve selected
/// more than once is kept once. Curves without finite values are dropped.
pub fn curve_filter(curves: &[TopKCurve]) -> Vec<TopKCurve> {
    let mut families: Vec<(String, String)> = Vec::new();
    for c in curves {
        let key = (family_of(&c.a), family_of(&c.b));
        if !families.contains(&key) {
            families.push(key);
        }
    }
    let mut out = Vec::new();
    for key in families {
        let members: Vec<&TopKCurve> = curves
            .iter()
            .filter(|c| (family_of(&c.a), family_of(&c.b)) == key && c.mean().is_some())
            .collect();
        if members.is_empty() {
            continue;
        }
        let pick = |f: &dyn Fn(&TopKCurve) -> f64, highest: bool| {
            let mut best = 0;
            for (i, c) in members.iter().enumerate() {
                let (v, b) = (f(c), f(members[best]));
                if (highest && v > b) || (!highest && v < b) {
                    best = i;
                }
            }
            best
        };
        let picks = [
            pick(&|c| c.max().unwrap(), true),
            pick(&|c| c.min().unwrap(), false),
            pick(&|c| c.mean().unwrap(), false),
            pick(&|c| c.mean().unwrap(), true),
        ];
        let mut kept: Vec<usize> = Vec::new();
        for p in picks {
            if !kept.contains(&p) && !kept.iter().any(|&q| members[q] == members[p]) {
                kept.push(p);
            }
        }
        out.extend(kept.into_iter().map(|i| members[i].clone()));
    }
    out
}

/// Long-format CSV: `method_a,method_b,K,size,tau`.
pub fn curves_csv(curves: &[TopKCurve]) -> String {
    let mut out = String::from("method_a,method_b,K,size,tau\n");
    for c in curves {
        for p in &c.points {
            out.push_str(&format!("{},{},{},{},{}\n", c.a, c.b, p.k, p.size, sig(p.tau, 12)));
        }
    }
    out
}
