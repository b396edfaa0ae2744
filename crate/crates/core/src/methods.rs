//! Short method tags (`u3`, `h4`, `a5`, `ec`) used to request centralities in
//! bulk, and a runner that applies each one to a hypergraph.

use std::fmt;
use std::str::FromStr;

use crate::hypercore::{largest_connected_component, order_slice, Hypergraph};
use crate::spectral::{alt_centrality, ec, hec, uphec, CentralityResult, SolverOptions, SpectralError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodTag {
    /// `uP`: project-and-uplift centrality at order `P`.
    Uphec(usize),
    /// `hM`: H-eigenvector centrality of the largest component of the order-`M` slice.
    Hec(usize),
    /// `aM`: index-duplication uniformization at order `M`.
    Alt(usize),
    /// `ec`: eigenvector centrality of the largest component of the pairwise slice.
    Ec,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodTag::Uphec(p) => write!(f, "u{p}"),
            MethodTag::Hec(m) => write!(f, "h{m}"),
            MethodTag::Alt(m) => write!(f, "a{m}"),
            MethodTag::Ec => write!(f, "ec"),
        }
    }
}

impl FromStr for MethodTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        if s == "ec" {
            return Ok(MethodTag::Ec);
        }
        let bad = || format!("unknown method tag {s:?} (expected ec, u<p>, h<m> or a<m> with order >= 2)");
        let (head, order) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let order: usize = order.parse().map_err(|_| bad())?;
        if order < 2 {
            return Err(bad());
        }
        match head {
            "u" => Ok(MethodTag::Uphec(order)),
            "h" => Ok(MethodTag::Hec(order)),
            "a" => Ok(MethodTag::Alt(order)),
            _ => Err(bad()),
        }
    }
}

/// Runs `tag` on `h`. Tags that work on a single-order slice (`h*`, `ec`)
/// take the largest component of that slice; the others need `h` itself to
/// be connected.
pub fn run(h: &Hypergraph, tag: MethodTag, opts: &SolverOptions) -> Result<CentralityResult, SpectralError> {
    match tag {
        MethodTag::Uphec(p) => uphec(h, p, opts),
        MethodTag::Alt(m) => alt_centrality(h, m, opts),
        MethodTag::Hec(m) => {
            let slice = largest_connected_component(&order_slice(h, m));
            hec(&slice, m, opts)
        }
        MethodTag::Ec => {
            let slice = largest_connected_component(&order_slice(h, 2));
            ec(&slice, opts)
        }
    }
}
