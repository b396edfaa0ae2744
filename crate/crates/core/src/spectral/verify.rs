use serde::Serialize;

use crate::tensor::{TensorError, UniformTensor};

use super::ZNorm;

/// Outcome of an eigenpair check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenCheck {
    /// Infinity-norm residual of the eigen-equation divided by `|lambda|`
    /// (absolute when `lambda` is zero).
    pub residual: f64,
    /// `| |c| - 1 |` in the constrained norm, zero when no norm is imposed.
    pub norm_violation: f64,
    pub passed: bool,
}

/// Checks `T c^{m-1} = lambda c^[q]`.
pub fn verify_fixed_point(
    t: &UniformTensor,
    lambda: f64,
    c: &[f64],
    q: usize,
    tol: f64,
) -> Result<EigenCheck, TensorError> {
    let y = t.apply(c)?;
    let scale = if lambda == 0.0 { 1.0 } else { lambda.abs() };
    let residual = y
        .iter()
        .zip(c)
        .map(|(&yi, &ci)| (yi - lambda * ci.powi(q as i32)).abs())
        .fold(0.0, f64::max)
        / scale;
    Ok(EigenCheck {
        residual,
        norm_violation: 0.0,
        passed: residual <= tol,
    })
}

/// Checks the H-eigen-equation `T c^{m-1} = lambda c^[m-1]`.
pub fn verify_h_eigenpair(
    t: &UniformTensor,
    lambda: f64,
    c: &[f64],
    tol: f64,
) -> Result<EigenCheck, TensorError> {
    verify_fixed_point(t, lambda, c, t.order() - 1, tol)
}

/// Checks the Z-eigen-equation `T c^{m-1} = lambda c` and `|c| = 1` in the
/// given norm.
pub fn verify_z_eigenpair(
    t: &UniformTensor,
    lambda: f64,
    c: &[f64],
    norm: ZNorm,
    tol: f64,
) -> Result<EigenCheck, TensorError> {
    let base = verify_fixed_point(t, lambda, c, 1, tol)?;
    let norm_violation = (norm.normalization().norm(c) - 1.0).abs();
    Ok(EigenCheck {
        norm_violation,
        passed: base.residual <= tol && norm_violation <= tol,
        ..base
    })
}
