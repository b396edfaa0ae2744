//! Eigenvector solvers and checks.
//!
//! * [`h_eigen_power`]: shifted power iteration for the Perron H-eigenpair
//!   `T c^{m-1} = lambda c^[m-1]` of a weakly irreducible nonnegative tensor.
//! * [`eigenvector_centrality`]: plain matrix power method for order-2 tensors.
//! * [`ec`], [`hec`], [`uhec`], [`uphec`], [`alt_centrality`]: hypergraph-level
//!   pipelines returning a [`CentralityResult`] over the original nodes.
//! * [`detect_uplift_structure`] and [`z_via_uplift`]: closed-form Perron
//!   Z-eigenpairs for hypergraphs that are multi-uplifts of a pairwise graph.
//! * [`verify_h_eigenpair`] and [`verify_z_eigenpair`]: residual checks.

mod pipelines;
mod power;
mod verify;
mod zeig;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::tensor::{ScoreVector, TensorError};
use crate::uniformize::UniformizeError;

pub use pipelines::{alt_centrality, centrality_of_uniform, ec, hec, uhec, uphec};
pub use power::{eigenvector_centrality, h_eigen_power};
pub use verify::{verify_fixed_point, verify_h_eigenpair, verify_z_eigenpair, EigenCheck};
pub use zeig::{detect_uplift_structure, omega, z_via_uplift, ZEigenpair, ZNorm};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Uniformize(#[from] UniformizeError),
    #[error("hypergraph is not strongly connected ({components} components); extract the largest connected component first")]
    Disconnected { components: usize },
    #[error("tensor is not weakly irreducible; extract the largest connected component first")]
    NotWeaklyIrreducible,
    #[error("expected a {expected}-uniform hypergraph")]
    WrongOrder { expected: String },
    #[error("power iteration did not converge in {} iterations (relative spread {:.3e})", .0.iterations, .0.spread)]
    NotConverged(Box<EigenSolution>),
    #[error("centrality did not converge in {} iterations", .0.iterations)]
    CentralityNotConverged(Box<CentralityResult>),
    #[error("not an uplift of a pairwise graph; general ZEC out of scope")]
    NoUpliftStructure,
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
}

/// Root taken in the power update, i.e. which fixed point is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootExponent {
    /// `x <- (T x^{m-1})^[1/(m-1)]`: the H-eigenvector
    /// `T c^{m-1} = lambda c^[m-1]`.
    #[default]
    OrderMinusOne,
    /// `x <- (T x^{m-1})^[1/m]`: the fixed point `T c^{m-1} = lambda c^[m]` at
    /// unit l1 norm. This is the update used by several published reference
    /// implementations, and it is what their reported scores correspond to.
    Order,
}

impl RootExponent {
    pub fn exponent(self, order: usize) -> usize {
        match self {
            RootExponent::OrderMinusOne => order - 1,
            RootExponent::Order => order,
        }
    }
}

impl FromStr for RootExponent {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "order-minus-one" | "m-1" | "h" => Ok(RootExponent::OrderMinusOne),
            "order" | "m" => Ok(RootExponent::Order),
            _ => Err(format!("unknown root exponent {s:?} (use order-minus-one or order)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Start {
    Uniform,
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Stop when `(lambda_max - lambda_min) / lambda_max <= tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Diagonal shift `rho` added to the iteration map.
    pub shift: f64,
    pub start: Start,
    pub root: RootExponent,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: 100_000,
            shift: 1.0,
            start: Start::Uniform,
            root: RootExponent::OrderMinusOne,
        }
    }
}

impl SolverOptions {
    pub(crate) fn validate(&self) -> Result<(), SpectralError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(SpectralError::InvalidOptions(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.shift >= 0.0 && self.shift.is_finite()) {
            return Err(SpectralError::InvalidOptions(format!(
                "shift must be nonnegative, got {}",
                self.shift
            )));
        }
        if self.max_iter == 0 {
            return Err(SpectralError::InvalidOptions("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Tensor-level solver output. `vector` has unit l1 norm.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenSolution {
    pub vector: Vec<f64>,
    pub eigenvalue: f64,
    /// Relative residual of the fixed-point equation, infinity norm.
    pub residual: f64,
    /// Relative gap between the upper and lower eigenvalue bounds.
    pub spread: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Method {
    /// Eigenvector centrality of a pairwise graph.
    Ec,
    /// H-eigenvector centrality of the order-`m` slice.
    Hec(usize),
    /// Uplift to order `m`, then H-eigenvector.
    Uhec(usize),
    /// Project and uplift to order `p`, then H-eigenvector.
    Uphec(usize),
    /// Index-duplication uniformization to order `m`, then H-eigenvector.
    Alt(usize),
    /// Closed-form Z-eigenvector through the uplift correspondence.
    ZecUplift,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Ec => write!(f, "EC"),
            Method::Hec(m) => write!(f, "HEC({m})"),
            Method::Uhec(m) => write!(f, "UHEC({m})"),
            Method::Uphec(p) => write!(f, "UPHEC({p})"),
            Method::Alt(m) => write!(f, "ALT({m})"),
            Method::ZecUplift => write!(f, "ZEC-uplift"),
        }
    }
}

/// Centrality scores over the non-auxiliary nodes of a hypergraph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralityResult {
    pub method: Method,
    /// Labels of the scored (non-auxiliary) nodes, aligned with `scores`.
    pub labels: Vec<String>,
    /// Real-node scores re-normalized to unit l1 norm.
    pub scores: ScoreVector,
    /// Real-node values as returned by the solver, before re-normalization.
    pub raw_scores: Vec<f64>,
    /// Auxiliary node labels and their raw solver values.
    pub aux_scores: Vec<(String, f64)>,
    pub eigenvalue: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl CentralityResult {
    pub fn score_of(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.scores.values()[i])
    }

    /// Real-node scores rescaled so the first auxiliary node has score one,
    /// the consistency convention under which uplifted and original sums agree.
    pub fn scores_with_unit_aux(&self) -> Option<Vec<f64>> {
        let &(_, star) = self.aux_scores.first()?;
        Some(self.raw_scores.iter().map(|v| v / star).collect())
    }

    /// (label, score) pairs sorted by descending score, ties by label order.
    pub fn ranking(&self) -> Vec<(&str, f64)> {
        let mut v: Vec<(&str, f64)> = self
            .labels
            .iter()
            .map(String::as_str)
            .zip(self.scores.values().iter().copied())
            .collect();
        v.sort_by(|a, b| b.1.total_cmp(&a.1));
        v
    }
}
