//! Hypergraph rewrites that produce uniform hypergraphs.
//!
//! * [`uplift`] pads every short edge with a single auxiliary node `*`,
//!   repeated as often as needed, and scales the edge by
//!   `m* (m - m*)! / m!` so the symmetrized tensor does not over-count the
//!   extra index arrangements.
//! * [`multi_uplift`] adds several distinct auxiliary nodes with fixed
//!   multiplicities to every edge of a uniform hypergraph.
//! * [`project`] replaces every edge larger than `p` by all of its
//!   `p`-subsets, each weighted by how many superedges it takes part in.
//! * [`uplift_project`] combines the two to reach any order between the
//!   smallest and largest edge size.
//! * [`alternative_uniformization`] is the index-duplication scheme used as a
//!   comparison baseline.
//!
//! All outputs store the tensor component value of each support in the edge
//! weight, so [`crate::tensor::UniformTensor::from_hypergraph`] is a direct copy.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{factorial, for_each_combination, for_each_composition, multinomial, MAX_ORDER};
use crate::hypercore::{AuxNode, AuxSpec, HyperEdge, Hypergraph, NodeId, Support};

#[derive(Debug, Error, PartialEq)]
pub enum UniformizeError {
    #[error("cannot uplift below max edge size (order {order}, max edge size {max})")]
    BelowMaxEdgeSize { order: usize, max: usize },
    #[error("order {0} outside the supported range 2..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("projection order {order} must lie in 2..={max}")]
    ProjectionOrder { order: usize, max: usize },
    #[error("input hypergraph is not uniform")]
    NotUniform,
    #[error("multi-uplift needs multiplicities summing to {expected}, got {got}")]
    MultiplicitySum { expected: usize, got: usize },
    #[error("auxiliary multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("multi-uplift target order {order} must exceed the input order {input}")]
    OrderNotIncreasing { order: usize, input: usize },
    #[error("edge {0} carries repeated nodes; expected a plain set")]
    NotSimple(String),
}

/// Edge-touch operation counts spent while building a uniform hypergraph:
/// one per auxiliary node inserted and one per member written into a
/// projected subset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionCost {
    pub uplift_ops: u64,
    pub projection_ops: u64,
}

impl ConstructionCost {
    pub fn total(&self) -> u64 {
        self.uplift_ops + self.projection_ops
    }
}

impl std::ops::Add for ConstructionCost {
    type Output = ConstructionCost;
    fn add(self, rhs: Self) -> Self {
        ConstructionCost {
            uplift_ops: self.uplift_ops + rhs.uplift_ops,
            projection_ops: self.projection_ops + rhs.projection_ops,
        }
    }
}

fn check_order(m: usize) -> Result<(), UniformizeError> {
    if (2..=MAX_ORDER).contains(&m) {
        Ok(())
    } else {
        Err(UniformizeError::InvalidOrder(m))
    }
}

/// Component value multiplier for an edge padded with `m_star` copies of the
/// auxiliary node to reach order `m`.
pub fn star_factor(m: usize, m_star: usize) -> f64 {
    if m_star == 0 {
        1.0
    } else {
        m_star as f64 * factorial(m - m_star) / factorial(m)
    }
}

/// Uplift to order `m`. Adds one auxiliary node only if some edge is shorter
/// than `m`; an `m`-uniform input comes back unchanged.
pub fn uplift(h: &Hypergraph, m: usize) -> Result<Hypergraph, UniformizeError> {
    uplift_with_cost(h, m).map(|(g, _)| g)
}

pub fn uplift_with_cost(
    h: &Hypergraph,
    m: usize,
) -> Result<(Hypergraph, ConstructionCost), UniformizeError> {
    check_order(m)?;
    if m < h.max_edge_size() {
        return Err(UniformizeError::BelowMaxEdgeSize {
            order: m,
            max: h.max_edge_size(),
        });
    }
    let mut cost = ConstructionCost::default();
    if h.edges().iter().all(|e| e.size() == m) {
        return Ok((h.clone(), cost));
    }
    let star = NodeId(h.n());
    let mut labels = h.labels().to_vec();
    labels.push(h.fresh_label("*"));
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            let missing = m - e.size();
            if missing == 0 {
                return e.clone();
            }
            cost.uplift_ops += missing as u64;
            HyperEdge::new(
                e.support.with(star, missing as u32),
                e.weight * star_factor(m, missing),
            )
        })
        .collect();
    let mut aux = h.aux().clone();
    aux.nodes.push(AuxNode {
        id: star,
        multiplicity: None,
    });
    let g = Hypergraph::new(labels, edges, aux).expect("uplift preserves validity");
    Ok((g, cost))
}

/// Adds `multiplicities.len()` distinct auxiliary nodes to every edge of a
/// uniform hypergraph, node `k` appearing `multiplicities[k]` times. Edge
/// weights are left untouched; the arrangement factor is accounted for when
/// the tensor is contracted.
pub fn multi_uplift(
    h: &Hypergraph,
    m: usize,
    multiplicities: &[u32],
) -> Result<Hypergraph, UniformizeError> {
    check_order(m)?;
    let input = h.uniform_order().ok_or(UniformizeError::NotUniform)?;
    if m <= input {
        return Err(UniformizeError::OrderNotIncreasing { order: m, input });
    }
    if multiplicities.contains(&0) {
        return Err(UniformizeError::ZeroMultiplicity);
    }
    let got: usize = multiplicities.iter().map(|&p| p as usize).sum();
    if got != m - input {
        return Err(UniformizeError::MultiplicitySum {
            expected: m - input,
            got,
        });
    }
    let mut labels = h.labels().to_vec();
    let mut aux = h.aux().clone();
    let mut extra = Vec::with_capacity(multiplicities.len());
    for (k, &p) in multiplicities.iter().enumerate() {
        let id = NodeId(labels.len());
        let base = format!("*{}", k + 1);
        let mut label = h.fresh_label(&base);
        while labels.contains(&label) {
            label.push('*');
        }
        labels.push(label);
        aux.nodes.push(AuxNode {
            id,
            multiplicity: Some(p),
        });
        extra.push((id, p));
    }
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            HyperEdge::new(
                Support::from_multiplicities(e.support.iter().chain(extra.iter().copied())),
                e.weight,
            )
        })
        .collect();
    Ok(Hypergraph::new(labels, edges, aux).expect("multi-uplift preserves validity"))
}

/// Projection to order `p`: edges of size at most `p` pass through, larger
/// edges are replaced by their `p`-subsets. A subset collects the weight of
/// every superedge containing it (a count for unweighted input) plus its own
/// weight if it already was an edge.
pub fn project(h: &Hypergraph, p: usize) -> Result<Hypergraph, UniformizeError> {
    project_with_cost(h, p).map(|(g, _)| g)
}

pub fn project_with_cost(
    h: &Hypergraph,
    p: usize,
) -> Result<(Hypergraph, ConstructionCost), UniformizeError> {
    check_order(p)?;
    let mut cost = ConstructionCost::default();
    if h.edges().iter().all(|e| e.size() <= p) {
        return Ok((h.clone(), cost));
    }
    let mut edges = Vec::with_capacity(h.edges().len());
    for e in h.edges() {
        let k = e.size();
        if k <= p {
            edges.push(e.clone());
            continue;
        }
        let members = e.support.expanded();
        let mut seen: HashSet<Support> = HashSet::new();
        for_each_combination(k, p, |idx| {
            cost.projection_ops += p as u64;
            let sub = Support::from_nodes(idx.iter().map(|&i| members[i]));
            if seen.insert(sub.clone()) {
                edges.push(HyperEdge::new(sub, e.weight));
            }
        });
    }
    let g = Hypergraph::new(h.labels().to_vec(), edges, h.aux().clone())
        .expect("projection preserves validity");
    Ok((g, cost))
}

/// Project to order `p`, then uplift the remaining short edges to `p`.
pub fn uplift_project(h: &Hypergraph, p: usize) -> Result<Hypergraph, UniformizeError> {
    uplift_project_with_cost(h, p).map(|(g, _)| g)
}

pub fn uplift_project_with_cost(
    h: &Hypergraph,
    p: usize,
) -> Result<(Hypergraph, ConstructionCost), UniformizeError> {
    if p < 2 || p > h.max_edge_size() {
        return Err(UniformizeError::ProjectionOrder {
            order: p,
            max: h.max_edge_size(),
        });
    }
    let (projected, c1) = project_with_cost(h, p)?;
    let (uplifted, c2) = uplift_with_cost(&projected, p)?;
    Ok((uplifted, c1 + c2))
}

/// Normalizing constant of the alternative scheme for an edge of `s` nodes at
/// order `m`: the number of index tuples over the edge that use every node.
pub fn alternative_alpha(s: usize, m: usize) -> u64 {
    let mut alpha = 0;
    for_each_composition(m, s, |parts| alpha += multinomial(parts));
    alpha
}

/// Index-duplication uniformization: an edge of `s` nodes becomes every
/// multiset over its nodes that uses each node at least once and has total
/// size `m`, each with component value `w * s / alpha`.
pub fn alternative_uniformization(h: &Hypergraph, m: usize) -> Result<Hypergraph, UniformizeError> {
    check_order(m)?;
    if m < h.max_edge_size() {
        return Err(UniformizeError::BelowMaxEdgeSize {
            order: m,
            max: h.max_edge_size(),
        });
    }
    let mut edges = Vec::new();
    for e in h.edges() {
        if !e.support.is_simple() {
            return Err(UniformizeError::NotSimple(h.describe_edge(e)));
        }
        let nodes: Vec<NodeId> = e.support.nodes().collect();
        let s = nodes.len();
        let value = e.weight * s as f64 / alternative_alpha(s, m) as f64;
        for_each_composition(m, s, |parts| {
            let support =
                Support::from_multiplicities(nodes.iter().copied().zip(parts.iter().copied()));
            edges.push(HyperEdge::new(support, value));
        });
    }
    Ok(Hypergraph::new(h.labels().to_vec(), edges, AuxSpec::default())
        .expect("alternative uniformization preserves validity"))
}
