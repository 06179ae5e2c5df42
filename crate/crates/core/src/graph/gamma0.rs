//! The chain graph attached to a surface written as a connected sum of tori.
//!
//! Vertices `0..2g-2` lie on a path. The first and last carry the loops
//! `a1` and `ag`; each middle handle `i = 2..g-1` is a double edge
//! `{ai, a'i}`; consecutive handles are joined by the bridges `c1..c(g-1)`.
//! Edge ids follow the name groups: `a1..ag`, then `a'2..a'(g-1)`, then
//! `c1..c(g-1)`.

use std::collections::BTreeMap;

use super::{EdgeId, TrivalentGraph};
use crate::error::GraphError;

/// Edge ids of the named groups in a chain graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma0Edges {
    /// `a1..ag`
    pub a: Vec<EdgeId>,
    /// `(ai, a'i)` for `i = 2..g-1`
    pub paired: Vec<(EdgeId, EdgeId)>,
    /// `c1..c(g-1)`
    pub c: Vec<EdgeId>,
}

impl Gamma0Edges {
    /// Recovers the groups from edge names; `None` if any name is missing.
    pub fn from_names(graph: &TrivalentGraph) -> Option<Self> {
        let g = graph.genus() as usize;
        let a = (1..=g)
            .map(|i| graph.edge_by_name(&format!("a{i}")))
            .collect::<Option<Vec<_>>>()?;
        let paired = (2..g)
            .map(|i| Some((a[i - 1], graph.edge_by_name(&format!("a'{i}"))?)))
            .collect::<Option<Vec<_>>>()?;
        let c = (1..g)
            .map(|i| graph.edge_by_name(&format!("c{i}")))
            .collect::<Option<Vec<_>>>()?;
        Some(Gamma0Edges { a, paired, c })
    }
}

pub fn gamma0(genus: u32) -> Result<TrivalentGraph, GraphError> {
    if genus < 2 {
        return Err(GraphError::GenusTooSmall(genus));
    }
    let g = genus as usize;
    let last = 2 * g - 3;
    let mut edges = Vec::with_capacity(3 * g - 3);
    let mut names = BTreeMap::new();
    // a_i
    for i in 1..=g {
        let e = if i == 1 {
            (0, 0)
        } else if i == g {
            (last, last)
        } else {
            (2 * i - 3, 2 * i - 2)
        };
        names.insert(edges.len(), format!("a{i}"));
        edges.push(e);
    }
    for i in 2..g {
        names.insert(edges.len(), format!("a'{i}"));
        edges.push((2 * i - 3, 2 * i - 2));
    }
    for i in 1..g {
        names.insert(edges.len(), format!("c{i}"));
        edges.push((2 * i - 2, 2 * i - 1));
    }
    Ok(TrivalentGraph::new(genus, 2 * g - 2, edges)?.with_names(names))
}
