use std::collections::{BTreeMap, BTreeSet, HashMap};

use log::warn;
use serde::Serialize;

use super::{AuxSpec, HyperEdge, Hypergraph, NodeId, Support};

/// What the preprocessing pipeline did to the raw simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreprocessReport {
    pub raw_simplices: usize,
    pub singletons_dropped: usize,
    pub simplices_with_repeated_nodes: usize,
    pub duplicate_edges_merged: usize,
    pub isolated_nodes_dropped: usize,
    pub nodes: usize,
    pub edges: usize,
}

/// Collects raw simplices over external integer ids and turns them into a
/// [`Hypergraph`].
///
/// Preprocessing, in order: repeated ids inside a simplex are collapsed to a
/// set, simplices of size one are dropped, identical edges are merged by
/// summing weights, and nodes without any remaining edge are dropped. Dense
/// indices are assigned in ascending order of the external id, so index order
/// and label order agree.
#[derive(Debug, Default)]
pub struct HypergraphBuilder {
    simplices: Vec<(Vec<u64>, f64)>,
    declared: BTreeSet<u64>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_simplex(&mut self, ids: &[u64], weight: f64) -> &mut Self {
        self.simplices.push((ids.to_vec(), weight));
        self
    }

    /// Registers a node that may have no edges (e.g. from a label file).
    pub fn declare_node(&mut self, id: u64) -> &mut Self {
        self.declared.insert(id);
        self
    }

    pub fn build(&self) -> (Hypergraph, PreprocessReport) {
        let mut report = PreprocessReport {
            raw_simplices: self.simplices.len(),
            ..Default::default()
        };
        let mut merged: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
        let mut order: Vec<Vec<u64>> = Vec::new();
        for (ids, weight) in &self.simplices {
            let set: BTreeSet<u64> = ids.iter().copied().collect();
            if set.len() != ids.len() {
                report.simplices_with_repeated_nodes += 1;
            }
            if set.len() < 2 {
                report.singletons_dropped += 1;
                continue;
            }
            let key: Vec<u64> = set.into_iter().collect();
            match merged.get_mut(&key) {
                Some(w) => {
                    *w += weight;
                    report.duplicate_edges_merged += 1;
                }
                None => {
                    merged.insert(key.clone(), *weight);
                    order.push(key);
                }
            }
        }
        if report.simplices_with_repeated_nodes > 0 {
            warn!(
                "{} simplices listed a node more than once; collapsed to sets",
                report.simplices_with_repeated_nodes
            );
        }

        let used: BTreeSet<u64> = order.iter().flatten().copied().collect();
        report.isolated_nodes_dropped = self.declared.difference(&used).count()
            + self
                .simplices
                .iter()
                .flat_map(|(ids, _)| ids.iter())
                .copied()
                .collect::<BTreeSet<u64>>()
                .difference(&used)
                .filter(|id| !self.declared.contains(id))
                .count();

        let index: HashMap<u64, NodeId> = used
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, NodeId(i)))
            .collect();
        let labels: Vec<String> = used.iter().map(u64::to_string).collect();
        let edges: Vec<HyperEdge> = order
            .iter()
            .map(|key| {
                let support = Support::from_nodes(key.iter().map(|id| index[id]));
                HyperEdge::new(support, merged[key])
            })
            .collect();
        report.nodes = labels.len();
        report.edges = edges.len();
        let h = Hypergraph::new(labels, edges, AuxSpec::default())
            .expect("builder output is valid by construction");
        (h, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preprocessing_pipeline() {
        let mut b = HypergraphBuilder::new();
        b.add_simplex(&[7], 1.0)
            .add_simplex(&[1, 2], 1.0)
            .add_simplex(&[2, 1], 1.0)
            .add_simplex(&[3, 3, 4], 1.0)
            .add_simplex(&[9, 9], 1.0)
            .declare_node(42);
        let (h, report) = b.build();
        assert_eq!(h.n(), 4);
        assert_eq!(h.labels(), &["1", "2", "3", "4"]);
        assert_eq!(h.edges().len(), 2);
        assert_eq!(h.edge_by_labels(&["1", "2"]).unwrap().weight, 2.0);
        assert!(h.edge_by_labels(&["3", "4"]).is_some());
        assert_eq!(
            report,
            PreprocessReport {
                raw_simplices: 5,
                singletons_dropped: 2,
                simplices_with_repeated_nodes: 2,
                duplicate_edges_merged: 1,
                isolated_nodes_dropped: 3,
                nodes: 4,
                edges: 2,
            }
        );
    }

    #[test]
    fn indices_follow_numeric_id_order() {
        let h = Hypergraph::from_simplices([&[10u64, 2][..], &[2, 30]]);
        assert_eq!(h.labels(), &["2", "10", "30"]);
    }
}
