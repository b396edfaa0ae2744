use std::collections::BTreeMap;

use serde::Serialize;

use super::{connected_components, induced_subhypergraph, Hypergraph, NodeId};

/// Keeps only the edges of size `m` and the nodes incident to them. Returns an
/// empty hypergraph when no edge has that size.
pub fn order_slice(h: &Hypergraph, m: usize) -> Hypergraph {
    let mut incident = vec![false; h.n()];
    let mut any = false;
    for e in h.edges().iter().filter(|e| e.size() == m) {
        any = true;
        for v in e.support.nodes() {
            incident[v.0] = true;
        }
    }
    let nodes: Vec<NodeId> = if any {
        (0..h.n()).filter(|&v| incident[v]).map(NodeId).collect()
    } else {
        Vec::new()
    };
    let sliced = induced_subhypergraph(h, &nodes);
    // edges of other sizes can survive when all their members are incident to size-m edges
    if sliced.edges().iter().all(|e| e.size() == m) {
        sliced
    } else {
        let edges = sliced
            .edges()
            .iter()
            .filter(|e| e.size() == m)
            .cloned()
            .collect();
        Hypergraph::new(sliced.labels().to_vec(), edges, sliced.aux().clone())
            .expect("filtered edges stay valid")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderStats {
    pub order: usize,
    pub nodes: usize,
    pub edges: usize,
    pub lcc_nodes: usize,
    pub lcc_edges: usize,
    /// LCC node count over the slice's node count.
    pub lcc_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypergraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub lcc_nodes: usize,
    pub lcc_fraction: f64,
    pub per_order: Vec<OrderStats>,
}

fn lcc_size(h: &Hypergraph) -> (usize, usize) {
    let comps = connected_components(h);
    let Some(best) = comps.iter().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))) else {
        return (0, 0);
    };
    let mut inside = vec![false; h.n()];
    for v in best {
        inside[v.0] = true;
    }
    let edges = h
        .edges()
        .iter()
        .filter(|e| e.support.nodes().all(|v| inside[v.0]))
        .count();
    (best.len(), edges)
}

fn fraction(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

/// Node and edge counts, the edge-size histogram and LCC coverage, both for
/// the whole hypergraph and for every order slice present.
pub fn stats(h: &Hypergraph) -> HypergraphStats {
    let mut histogram = BTreeMap::new();
    for e in h.edges() {
        *histogram.entry(e.size()).or_insert(0) += 1;
    }
    let (lcc_nodes, _) = lcc_size(h);
    let per_order = histogram
        .keys()
        .map(|&m| {
            let slice = order_slice(h, m);
            let (ln, le) = lcc_size(&slice);
            OrderStats {
                order: m,
                nodes: slice.n(),
                edges: slice.edges().len(),
                lcc_nodes: ln,
                lcc_edges: le,
                lcc_fraction: fraction(ln, slice.n()),
            }
        })
        .collect();
    HypergraphStats {
        nodes: h.n(),
        edges: h.edges().len(),
        histogram,
        lcc_nodes,
        lcc_fraction: fraction(lcc_nodes, h.n()),
        per_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_mixed() -> Hypergraph {
        Hypergraph::from_simplices([&[1u64, 2, 3][..], &[2, 4], &[3, 5]])
    }

    #[test]
    fn slices_of_small_mixed() {
        let h = small_mixed();
        let s2 = order_slice(&h, 2);
        assert_eq!(s2.labels(), &["2", "3", "4", "5"]);
        assert_eq!(s2.edges().len(), 2);
        assert!(s2.edge_by_labels(&["2", "4"]).is_some());
        assert!(s2.edge_by_labels(&["3", "5"]).is_some());

        let s3 = order_slice(&h, 3);
        assert_eq!(s3.labels(), &["1", "2", "3"]);
        assert_eq!(s3.edges().len(), 1);

        let s7 = order_slice(&h, 7);
        assert_eq!(s7.n(), 0);
        assert!(s7.is_empty());
    }

    #[test]
    fn slice_drops_other_orders_among_incident_nodes() {
        let h = Hypergraph::from_simplices([&[1u64, 2][..], &[2, 3], &[1, 2, 3]]);
        let s2 = order_slice(&h, 2);
        assert_eq!(s2.n(), 3);
        assert_eq!(s2.edges().len(), 2);
    }

    #[test]
    fn small_mixed_stats() {
        let st = stats(&small_mixed());
        assert_eq!(st.nodes, 5);
        assert_eq!(st.edges, 3);
        assert_eq!(st.histogram, BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(st.lcc_fraction, 1.0);
        assert_eq!(st.per_order.len(), 2);
        let o2 = &st.per_order[0];
        assert_eq!((o2.order, o2.nodes, o2.edges, o2.lcc_nodes), (2, 4, 2, 2));
        assert_eq!(o2.lcc_fraction, 0.5);
        let o3 = &st.per_order[1];
        assert_eq!((o3.order, o3.nodes, o3.edges, o3.lcc_nodes), (3, 3, 1, 3));
    }

    #[test]
    fn single_edge_stats() {
        let st = stats(&Hypergraph::from_simplices([&[1u64, 2][..]]));
        assert_eq!((st.nodes, st.edges), (2, 1));
        assert_eq!(st.histogram, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn empty_stats() {
        let st = stats(&Hypergraph::from_simplices(Vec::<Vec<u64>>::new()));
        assert_eq!(st.nodes, 0);
        assert!(st.per_order.is_empty());
        assert_eq!(st.lcc_fraction, 0.0);
    }
}
