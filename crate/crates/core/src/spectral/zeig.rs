use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::factorial_u64;
use crate::hypercore::{AuxNode, AuxSpec, DisjointSet, Hypergraph, NodeId};
use crate::tensor::{Normalization, ScoreVector, UniformTensor};

use super::power::eigenvector_centrality;
use super::{SolverOptions, SpectralError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZNorm {
    Z1,
    Z2,
}

impl ZNorm {
    pub fn normalization(self) -> Normalization {
        match self {
            ZNorm::Z1 => Normalization::L1,
            ZNorm::Z2 => Normalization::L2,
        }
    }
}

impl fmt::Display for ZNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZNorm::Z1 => "z1",
            ZNorm::Z2 => "z2",
        })
    }
}

impl FromStr for ZNorm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "z1" | "l1" => Ok(ZNorm::Z1),
            "z2" | "l2" => Ok(ZNorm::Z2),
            _ => Err(format!("unknown norm {s:?} (use z1 or z2)")),
        }
    }
}

/// Perron-like Z-eigenpair `T c^{m-1} = lambda c` of a multi-uplifted
/// pairwise graph, over all nodes including the auxiliary ones.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZEigenpair {
    pub labels: Vec<String>,
    pub eigenvector: ScoreVector,
    pub eigenvalue: f64,
    pub norm: ZNorm,
    pub aux: AuxSpec,
    /// `(l+1)! / prod p_k!`.
    pub omega: u64,
    /// Perron eigenvalue of the underlying weighted graph.
    pub graph_eigenvalue: f64,
}

impl ZEigenpair {
    pub fn component(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.eigenvector.values()[i])
    }
}

/// `(l+1)! / prod p_k!` with `l = sum p_k`.
pub fn omega(multiplicities: &[u32]) -> u64 {
    let l: usize = multiplicities.iter().map(|&p| p as usize).sum();
    multiplicities
        .iter()
        .fold(factorial_u64(l + 1), |acc, &p| acc / factorial_u64(p as usize))
}

/// Finds auxiliary nodes that occur with the same multiplicity in every edge
/// and whose removal leaves one pair of distinct nodes per edge.
///
/// Nodes already marked auxiliary are used when they fit. Otherwise, when
/// more nodes than needed are common to all edges, higher indices are
/// preferred. An unmarked single edge is ambiguous (every member is common)
/// and yields `None`.
pub fn detect_uplift_structure(h: &Hypergraph) -> Option<AuxSpec> {
    let m = h.uniform_order()?;
    if m < 3 || h.is_empty() {
        return None;
    }
    let l = m - 2;
    let first = &h.edges()[0].support;
    let mut common: Vec<(NodeId, u32)> = first
        .iter()
        .filter(|&(v, k)| h.edges().iter().all(|e| e.support.multiplicity(v) == k))
        .collect();

    let marked: Vec<(NodeId, u32)> = common.iter().copied().filter(|&(v, _)| h.is_aux(v)).collect();
    let mut chosen = Vec::new();
    let found = if h.aux().ids().count() == marked.len() && pick(&marked, 0, l, &mut chosen, h) {
        true
    } else if h.edges().len() == 1 {
        false
    } else {
        chosen.clear();
        common.sort_by_key(|&(v, _)| std::cmp::Reverse(v.0));
        pick(&common, 0, l, &mut chosen, h)
    };
    if !found {
        return None;
    }
    let mut nodes: Vec<AuxNode> = chosen
        .into_iter()
        .map(|(id, p)| AuxNode { id, multiplicity: Some(p) })
        .collect();
    nodes.sort_by_key(|a| a.id);
    Some(AuxSpec { nodes })
}

/// Depth-first subset search in preference order for a set of common nodes
/// with total multiplicity `need` that leaves a proper pair in every edge.
fn pick(
    common: &[(NodeId, u32)],
    from: usize,
    need: usize,
    chosen: &mut Vec<(NodeId, u32)>,
    h: &Hypergraph,
) -> bool {
    if need == 0 {
        return h.edges().iter().all(|e| {
            let rest: Vec<(NodeId, u32)> = e
                .support
                .iter()
                .filter(|(v, _)| !chosen.iter().any(|(c, _)| c == v))
                .collect();
            rest.len() == 2 && rest.iter().all(|&(_, k)| k == 1)
        });
    }
    for i in from..common.len() {
        let (v, k) = common[i];
        if k as usize <= need {
            chosen.push((v, k));
            if pick(common, i + 1, need - k as usize, chosen, h) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Closed-form Perron Z-eigenpair of a hypergraph detected as a multi-uplift
/// of a connected pairwise graph `G` with adjacency `A` (edge weights as
/// entries).
///
/// Real-node components are the Perron vector `c'` of `A`; auxiliary node `k`
/// with multiplicity `p_k` gets `sqrt(p_k * c'^T A c' / (2 lambda))`, the
/// positive root of its own row of the eigen-equation. After scaling to the
/// requested norm, the eigenvalue is `lambda * Omega * prod c_k^{p_k}`.
pub fn z_via_uplift(h: &Hypergraph, norm: ZNorm) -> Result<ZEigenpair, SpectralError> {
    let aux = detect_uplift_structure(h).ok_or(SpectralError::NoUpliftStructure)?;
    let n = h.n();
    let is_aux: Vec<bool> = (0..n).map(|i| aux.contains(NodeId(i))).collect();
    let mut dense_index = vec![usize::MAX; n];
    let mut real = Vec::new();
    for i in 0..n {
        if !is_aux[i] {
            dense_index[i] = real.len();
            real.push(i);
        }
    }

    let mut pairs = Vec::with_capacity(h.edges().len());
    let mut dsu = DisjointSet::new(real.len());
    let mut merges = 0;
    for e in h.edges() {
        let ends: Vec<usize> = e
            .support
            .nodes()
            .filter(|v| !is_aux[v.0])
            .map(|v| dense_index[v.0])
            .collect();
        if dsu.union(ends[0], ends[1]) {
            merges += 1;
        }
        pairs.push((
            crate::hypercore::Support::from_nodes([NodeId(ends[0]), NodeId(ends[1])]),
            e.weight,
        ));
    }
    if merges + 1 != real.len() {
        return Err(SpectralError::Disconnected {
            components: real.len() - merges,
        });
    }
    let graph = UniformTensor::new(2, real.len(), pairs)?;
    let opts = SolverOptions {
        tol: 1e-14,
        max_iter: 1_000_000,
        ..Default::default()
    };
    let sol = match eigenvector_centrality(&graph, &opts) {
        Ok(sol) => sol,
        // the relative spread can stall just above 1e-14 in floating point
        Err(SpectralError::NotConverged(sol)) if sol.spread <= 1e-12 => *sol,
        Err(e) => return Err(e),
    };
    let lambda = sol.eigenvalue;
    let sq: f64 = sol.vector.iter().map(|v| v * v).sum();

    let mut c = vec![0.0; n];
    for (k, &i) in real.iter().enumerate() {
        c[i] = sol.vector[k];
    }
    let mults: Vec<u32> = aux.nodes.iter().map(|a| a.multiplicity.unwrap_or(1)).collect();
    for (a, &p) in aux.nodes.iter().zip(&mults) {
        // c'^T A c' = lambda |c'|^2
        c[a.id.0] = (p as f64 * sq / 2.0).sqrt();
    }
    let eigenvector = ScoreVector::normalized(c, norm.normalization());
    let omega = omega(&mults);
    let prod: f64 = aux
        .nodes
        .iter()
        .zip(&mults)
        .map(|(a, &p)| eigenvector.values()[a.id.0].powi(p as i32))
        .product();
    Ok(ZEigenpair {
        labels: h.labels().to_vec(),
        eigenvalue: lambda * omega as f64 * prod,
        eigenvector,
        norm,
        aux,
        omega,
        graph_eigenvalue: lambda,
    })
}
