//! Hypergraph data model.
//!
//! Nodes are dense indices `0..n` with an external label each. Hyperedges are
//! multisets of nodes with a positive weight; plain input edges are simple sets
//! and multiplicities above one only appear on auxiliary nodes introduced by
//! the uniformization operations.

mod builder;
mod components;
mod stats;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use builder::{HypergraphBuilder, PreprocessReport};
pub use components::{
    connected_components, induced_subhypergraph, is_strongly_connected,
    largest_connected_component, DisjointSet,
};
pub use stats::{order_slice, stats, HypergraphStats, OrderStats};

#[derive(Debug, Error, PartialEq)]
pub enum HypergraphError {
    #[error("edge references node {node} but the hypergraph has {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),
    #[error("edge weight must be positive and finite, got {0}")]
    InvalidWeight(f64),
    #[error("hyperedges need at least two members, got size {0}")]
    EdgeTooSmall(usize),
    #[error("auxiliary node {0} is not a node of the hypergraph")]
    UnknownAuxNode(usize),
}

/// Dense internal node index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A node multiset, kept sorted by node with strictly positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(Vec<(NodeId, u32)>);

impl Support {
    /// Builds a support from a list of members; repeated members add up.
    pub fn from_nodes<I: IntoIterator<Item = NodeId>>(nodes: I) -> Self {
        Self::from_multiplicities(nodes.into_iter().map(|v| (v, 1)))
    }

    pub fn from_multiplicities<I: IntoIterator<Item = (NodeId, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(NodeId, u32)> = pairs.into_iter().filter(|&(_, k)| k > 0).collect();
        v.sort_unstable_by_key(|&(node, _)| node);
        let mut out: Vec<(NodeId, u32)> = Vec::with_capacity(v.len());
        for (node, k) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == node => *acc += k,
                _ => out.push((node, k)),
            }
        }
        Support(out)
    }

    /// Total size `m(e)`, counting multiplicities.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&(_, k)| k as usize).sum()
    }

    /// Number of distinct members.
    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (NodeId, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn as_slice(&self) -> &[(NodeId, u32)] {
        &self.0
    }

    pub fn multiplicity(&self, node: NodeId) -> u32 {
        self.0
            .binary_search_by_key(&node, |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.multiplicity(node) > 0
    }

    /// True when every member appears exactly once.
    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|&(_, k)| k == 1)
    }

    /// Returns a copy with `extra` more copies of `node`.
    pub fn with(&self, node: NodeId, extra: u32) -> Support {
        Support::from_multiplicities(self.iter().chain(std::iter::once((node, extra))))
    }

    /// Returns a copy with `node` removed entirely.
    pub fn without(&self, node: NodeId) -> Support {
        Support(self.0.iter().copied().filter(|&(v, _)| v != node).collect())
    }

    /// Members listed with repetition, in node order.
    pub fn expanded(&self) -> Vec<NodeId> {
        self.0
            .iter()
            .flat_map(|&(v, k)| std::iter::repeat_n(v, k as usize))
            .collect()
    }

    pub(crate) fn remap(&self, map: &[Option<NodeId>]) -> Option<Support> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, k) in &self.0 {
            out.push((map[v.0]?, k));
        }
        Some(Support::from_multiplicities(out))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperEdge {
    pub support: Support,
    /// Edge weight. For uniformized hypergraphs this is the tensor component
    /// value shared by every index tuple with this support.
    pub weight: f64,
}

impl HyperEdge {
    pub fn new(support: Support, weight: f64) -> Self {
        HyperEdge { support, weight }
    }

    pub fn size(&self) -> usize {
        self.support.size()
    }
}

/// One auxiliary node. `multiplicity` is set when the node appears the same
/// number of times in every edge (multi-uplift); plain uplift leaves it `None`
/// and the per-edge count lives in the supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuxNode {
    pub id: NodeId,
    pub multiplicity: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuxSpec {
    pub nodes: Vec<AuxNode>,
}

impl AuxSpec {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.iter().any(|a| a.id == node)
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().map(|a| a.id)
    }
}

/// An immutable weighted hypergraph.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<HyperEdge>,
    aux: AuxSpec,
    max_edge_size: usize,
}

impl Hypergraph {
    /// Validates and assembles a hypergraph. Edges with identical supports are
    /// merged by summing their weights; the first occurrence fixes the order.
    pub fn new(
        labels: Vec<String>,
        edges: Vec<HyperEdge>,
        aux: AuxSpec,
    ) -> Result<Self, HypergraphError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), NodeId(i)).is_some() {
                return Err(HypergraphError::DuplicateLabel(label.clone()));
            }
        }
        for a in &aux.nodes {
            if a.id.0 >= n {
                return Err(HypergraphError::UnknownAuxNode(a.id.0));
            }
        }
        let mut slot: HashMap<Support, usize> = HashMap::with_capacity(edges.len());
        let mut merged: Vec<HyperEdge> = Vec::with_capacity(edges.len());
        for e in edges {
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(HypergraphError::InvalidWeight(e.weight));
            }
            if e.size() < 2 {
                return Err(HypergraphError::EdgeTooSmall(e.size()));
            }
            if let Some(v) = e.support.nodes().find(|v| v.0 >= n) {
                return Err(HypergraphError::NodeOutOfRange { node: v.0, n });
            }
            match slot.get(&e.support) {
                Some(&i) => merged[i].weight += e.weight,
                None => {
                    slot.insert(e.support.clone(), merged.len());
                    merged.push(e);
                }
            }
        }
        let max_edge_size = merged.iter().map(HyperEdge::size).max().unwrap_or(0);
        Ok(Hypergraph {
            labels,
            index,
            edges: merged,
            aux,
            max_edge_size,
        })
    }

    /// Convenience constructor from raw integer node ids, running the standard
    /// preprocessing (see [`HypergraphBuilder`]).
    pub fn from_simplices<S, I>(simplices: I) -> Self
    where
        S: AsRef<[u64]>,
        I: IntoIterator<Item = S>,
    {
        let mut b = HypergraphBuilder::new();
        for s in simplices {
            b.add_simplex(s.as_ref(), 1.0);
        }
        b.build().0
    }

    /// Number of nodes, auxiliary ones included.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.0]
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn aux(&self) -> &AuxSpec {
        &self.aux
    }

    pub fn is_aux(&self, v: NodeId) -> bool {
        self.aux.contains(v)
    }

    /// Nodes that are not auxiliary, in index order.
    pub fn real_nodes(&self) -> Vec<NodeId> {
        (0..self.n())
            .map(NodeId)
            .filter(|&v| !self.is_aux(v))
            .collect()
    }

    /// Maximum edge size `M` (0 for an edgeless hypergraph).
    pub fn max_edge_size(&self) -> usize {
        self.max_edge_size
    }

    pub fn min_edge_size(&self) -> usize {
        self.edges.iter().map(HyperEdge::size).min().unwrap_or(0)
    }

    /// `Some(m)` when every edge has size `m`.
    pub fn uniform_order(&self) -> Option<usize> {
        let first = self.edges.first()?.size();
        self.edges
            .iter()
            .all(|e| e.size() == first)
            .then_some(first)
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Looks up an edge by the labels of its (simple) members.
    pub fn edge_by_labels(&self, labels: &[&str]) -> Option<&HyperEdge> {
        let ids: Option<Vec<NodeId>> = labels.iter().map(|l| self.node(l)).collect();
        let support = Support::from_nodes(ids?);
        self.edges.iter().find(|e| e.support == support)
    }

    /// Returns a label not yet used by this hypergraph, starting from `base`.
    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let mut label = base.to_string();
        while self.index.contains_key(&label) {
            label.push('*');
        }
        label
    }

    /// Renders an edge as labels, auxiliary repeats included, e.g. `{1,2,*,*}`.
    pub fn describe_edge(&self, e: &HyperEdge) -> String {
        let parts: Vec<&str> = e
            .support
            .expanded()
            .into_iter()
            .map(|v| self.label(v))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}
