use crate::hypercore::{connected_components, order_slice, Hypergraph};
use crate::tensor::{Normalization, ScoreVector, UniformTensor};
use crate::uniformize::{alternative_uniformization, project, uplift, uplift_project};

use super::power::{eigenvector_centrality, h_eigen_power};
use super::{CentralityResult, EigenSolution, Method, SolverOptions, SpectralError};

fn require_connected(h: &Hypergraph) -> Result<(), SpectralError> {
    let components = connected_components(h).len();
    if components != 1 {
        return Err(SpectralError::Disconnected { components });
    }
    Ok(())
}

fn to_result(h: &Hypergraph, method: Method, sol: EigenSolution) -> CentralityResult {
    let mut labels = Vec::new();
    let mut raw = Vec::new();
    let mut aux_scores = Vec::new();
    for (i, &v) in sol.vector.iter().enumerate() {
        let id = crate::hypercore::NodeId(i);
        if h.is_aux(id) {
            aux_scores.push((h.label(id).to_string(), v));
        } else {
            labels.push(h.label(id).to_string());
            raw.push(v);
        }
    }
    CentralityResult {
        method,
        labels,
        scores: ScoreVector::normalized(raw.clone(), Normalization::L1),
        raw_scores: raw,
        aux_scores,
        eigenvalue: sol.eigenvalue,
        residual: sol.residual,
        iterations: sol.iterations,
        converged: sol.converged,
    }
}

fn solve(
    h: &Hypergraph,
    method: Method,
    opts: &SolverOptions,
    matrix: bool,
) -> Result<CentralityResult, SpectralError> {
    require_connected(h)?;
    let t = UniformTensor::from_hypergraph(h)?;
    let solved = if matrix {
        eigenvector_centrality(&t, opts)
    } else {
        h_eigen_power(&t, opts)
    };
    match solved {
        Ok(sol) => Ok(to_result(h, method, sol)),
        Err(SpectralError::NotConverged(sol)) => Err(SpectralError::CentralityNotConverged(
            Box::new(to_result(h, method, *sol)),
        )),
        Err(e) => Err(e),
    }
}

/// H-eigenvector centrality of an already uniform hypergraph (auxiliary nodes
/// allowed), tagged with `method`.
pub fn centrality_of_uniform(
    h: &Hypergraph,
    method: Method,
    opts: &SolverOptions,
) -> Result<CentralityResult, SpectralError> {
    solve(h, method, opts, false)
}

/// Eigenvector centrality of a pairwise (2-uniform) hypergraph.
pub fn ec(h: &Hypergraph, opts: &SolverOptions) -> Result<CentralityResult, SpectralError> {
    if h.uniform_order().is_some_and(|m| m != 2) || h.max_edge_size() > 2 {
        return Err(SpectralError::WrongOrder { expected: "2".into() });
    }
    solve(h, Method::Ec, opts, true)
}

/// Standard H-eigenvector centrality of the order-`m` slice of `h`.
pub fn hec(h: &Hypergraph, m: usize, opts: &SolverOptions) -> Result<CentralityResult, SpectralError> {
    let slice = order_slice(h, m);
    if slice.is_empty() {
        return Err(SpectralError::WrongOrder { expected: m.to_string() });
    }
    solve(&slice, Method::Hec(m), opts, false)
}

/// Uplift to order `m`, then H-eigenvector centrality.
pub fn uhec(h: &Hypergraph, m: usize, opts: &SolverOptions) -> Result<CentralityResult, SpectralError> {
    require_connected(h)?;
    let g = uplift(h, m)?;
    solve(&g, Method::Uhec(m), opts, false)
}

/// Project and uplift to order `p`, then H-eigenvector centrality.
pub fn uphec(h: &Hypergraph, p: usize, opts: &SolverOptions) -> Result<CentralityResult, SpectralError> {
    require_connected(h)?;
    let g = uplift_project(h, p)?;
    solve(&g, Method::Uphec(p), opts, false)
}

/// Index-duplication uniformization to order `m`, projecting larger edges to
/// order `m` first, then H-eigenvector centrality.
pub fn alt_centrality(
    h: &Hypergraph,
    m: usize,
    opts: &SolverOptions,
) -> Result<CentralityResult, SpectralError> {
    require_connected(h)?;
    let base = if h.max_edge_size() > m { project(h, m)? } else { h.clone() };
    let g = alternative_uniformization(&base, m)?;
    solve(&g, Method::Alt(m), opts, false)
}
