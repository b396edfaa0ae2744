//! Connectivity of hypergraphs via union-find over edge supports.
//!
//! Two nodes are adjacent when some hyperedge contains both, which is exactly
//! the nonzero pattern of the flattening matrix of the adjacency tensor. A
//! hypergraph is strongly connected iff that pattern is irreducible.

use std::collections::HashMap;

use super::{AuxNode, AuxSpec, HyperEdge, Hypergraph, NodeId};

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }
}

/// Partition of the nodes into connected components. Each component is sorted
/// and components are ordered by their smallest node.
pub fn connected_components(h: &Hypergraph) -> Vec<Vec<NodeId>> {
    let n = h.n();
    let mut dsu = DisjointSet::new(n);
    for e in h.edges() {
        let mut nodes = e.support.nodes();
        if let Some(first) = nodes.next() {
            for v in nodes {
                dsu.union(first.0, v.0);
            }
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    for v in 0..n {
        let root = dsu.find(v);
        let i = *slot.entry(root).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[i].push(NodeId(v));
    }
    comps
}

/// True iff the hypergraph has at least one node and a single component.
pub fn is_strongly_connected(h: &Hypergraph) -> bool {
    h.n() > 0 && connected_components(h).len() == 1
}

/// Sub-hypergraph on `nodes`: keeps edges lying entirely inside the set and
/// re-indexes densely in ascending original index order. Labels and
/// auxiliary markers carry over.
pub fn induced_subhypergraph(h: &Hypergraph, nodes: &[NodeId]) -> Hypergraph {
    let mut keep: Vec<NodeId> = nodes.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let mut map: Vec<Option<NodeId>> = vec![None; h.n()];
    for (new, &old) in keep.iter().enumerate() {
        map[old.0] = Some(NodeId(new));
    }
    let labels = keep.iter().map(|&v| h.label(v).to_string()).collect();
    let edges = h
        .edges()
        .iter()
        .filter_map(|e| {
            e.support
                .remap(&map)
                .map(|s| HyperEdge::new(s, e.weight))
        })
        .collect();
    let aux = AuxSpec {
        nodes: h
            .aux()
            .nodes
            .iter()
            .filter_map(|a| {
                map[a.id.0].map(|id| AuxNode {
                    id,
                    multiplicity: a.multiplicity,
                })
            })
            .collect(),
    };
    Hypergraph::new(labels, edges, aux).expect("induced sub-hypergraph of a valid hypergraph")
}

/// Sub-hypergraph induced by the largest component. Ties go to the component
/// whose smallest node index is lowest; for ingested data this is the
/// smallest label because indices follow ascending id order.
pub fn largest_connected_component(h: &Hypergraph) -> Hypergraph {
    let comps = connected_components(h);
    // components are already ordered by smallest member, so the first maximum wins
    let best = comps
        .iter()
        .fold(None::<&Vec<NodeId>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        });
    match best {
        Some(c) if c.len() == h.n() => h.clone(),
        Some(c) => induced_subhypergraph(h, c),
        None => h.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels_of(h: &Hypergraph, comp: &[NodeId]) -> Vec<String> {
        comp.iter().map(|&v| h.label(v).to_string()).collect()
    }

    #[test]
    fn small_mixed_is_one_component() {
        let h = Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4], &[3, 5]]);
        let comps = connected_components(&h);
        assert_eq!(comps.len(), 1);
        assert_eq!(labels_of(&h, &comps[0]), ["1", "2", "3", "4", "5"]);
        assert!(is_strongly_connected(&h));
    }

    #[test]
    fn disjoint_edges_give_two_components() {
        let h = Hypergraph::from_simplices([&[1u64, 2][..], &[3, 4]]);
        assert_eq!(connected_components(&h).len(), 2);
        assert!(!is_strongly_connected(&h));
    }

    #[test]
    fn isolated_nodes_are_singletons() {
        let h = Hypergraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![],
            AuxSpec::default(),
        )
        .unwrap();
        let comps = connected_components(&h);
        assert_eq!(comps, vec![vec![NodeId(0)], vec![NodeId(1)], vec![NodeId(2)]]);
    }

    #[test]
    fn lcc_picks_the_larger_component() {
        let h = Hypergraph::from_simplices([&[1u64, 2][..], &[3, 4], &[4, 5]]);
        let lcc = largest_connected_component(&h);
        assert_eq!(lcc.labels(), &["3", "4", "5"]);
        assert_eq!(lcc.edges().len(), 2);
        assert!(lcc.edge_by_labels(&["3", "4"]).is_some());
        assert!(lcc.edge_by_labels(&["4", "5"]).is_some());
        assert_eq!(largest_connected_component(&lcc), lcc);
    }

    #[test]
    fn lcc_tie_goes_to_smallest_label() {
        let h = Hypergraph::from_simplices([&[5u64, 6][..], &[1, 9]]);
        let lcc = largest_connected_component(&h);
        assert_eq!(lcc.labels(), &["1", "9"]);
    }

    #[test]
    fn connected_input_is_kept() {
        let h = Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4], &[3, 5]]);
        assert_eq!(largest_connected_component(&h), h);
    }
}
