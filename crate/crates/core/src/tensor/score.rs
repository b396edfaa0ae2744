use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    L1,
    L2,
    Max,
    None,
}

impl Normalization {
    pub fn norm(self, values: &[f64]) -> f64 {
        match self {
            Normalization::L1 => values.iter().map(|v| v.abs()).sum(),
            Normalization::L2 => values.iter().map(|v| v * v).sum::<f64>().sqrt(),
            Normalization::Max => values.iter().fold(0.0, |m, v| m.max(v.abs())),
            Normalization::None => 1.0,
        }
    }
}

/// A vector of node scores together with the norm it has been scaled to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScoreVector {
    values: Vec<f64>,
    normalization: Normalization,
}

impl ScoreVector {
    /// Scales `values` to unit norm. A zero vector is left untouched.
    pub fn normalized(mut values: Vec<f64>, normalization: Normalization) -> Self {
        let norm = normalization.norm(&values);
        if norm > 0.0 && normalization != Normalization::None {
            values.iter_mut().for_each(|v| *v /= norm);
        }
        ScoreVector { values, normalization }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether the stored values really have unit norm (within `tol`).
    pub fn check(&self, tol: f64) -> bool {
        self.normalization == Normalization::None
            || (self.normalization.norm(&self.values) - 1.0).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizations_hold() {
        let raw = vec![1.0, -2.0, 2.0];
        for n in [Normalization::L1, Normalization::L2, Normalization::Max] {
            let s = ScoreVector::normalized(raw.clone(), n);
            assert!(s.check(1e-12), "{n:?}");
        }
        let l2 = ScoreVector::normalized(raw.clone(), Normalization::L2);
        assert_eq!(l2.values(), &[1.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(ScoreVector::normalized(raw.clone(), Normalization::None).values(), &raw[..]);
    }
}
