//! Canonical labeling by individualization and refinement.
//!
//! The certificate of a graph is the lexicographically smallest encoding of
//! its sorted edge list over all labelings reachable from an equitable
//! partition search. Refinement only looks at cell indices and adjacency
//! multiplicities, so the search tree of an isomorphic copy is the image of
//! this one and the minimum is relabeling-invariant.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{EdgeId, TrivalentGraph, VertexId};

/// Relabeling-invariant byte string: vertex count, then the canonical sorted
/// edge list as `(u, v)` byte pairs with `u <= v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalCertificate)
    }
}

impl fmt::Display for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

struct Search<'a> {
    mult: Vec<Vec<u8>>,
    edges: &'a [(VertexId, VertexId)],
    best: Option<(Vec<u8>, Vec<VertexId>)>,
}

type Partition = Vec<Vec<VertexId>>;

impl Search<'_> {
    fn refine(&self, mut cells: Partition) -> Partition {
        let n = self.mult.len();
        loop {
            let mut cell_of = vec![0usize; n];
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, VertexId)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; cells.len()];
                        for w in 0..n {
                            sig[cell_of[w]] += self.mult[v][w] as u32;
                        }
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        let mut part: Vec<VertexId> = keyed[start..i].iter().map(|x| x.1).collect();
                        part.sort_unstable();
                        next.push(part);
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn encode(&self, labeling: &[VertexId]) -> Vec<u8> {
        let mut pairs: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (labeling[u] as u8, labeling[v] as u8);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let mut out = Vec::with_capacity(1 + 2 * pairs.len());
        out.push(labeling.len() as u8);
        for (a, b) in pairs {
            out.push(a);
            out.push(b);
        }
        out
    }

    fn search(&mut self, cells: Partition) {
        let cells = self.refine(cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => {
                let mut labeling = vec![0; self.mult.len()];
                for (i, c) in cells.iter().enumerate() {
                    labeling[c[0]] = i;
                }
                let code = self.encode(&labeling);
                if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                    self.best = Some((code, labeling));
                }
            }
            Some(target) => {
                for &v in &cells[target] {
                    let mut branch = cells.clone();
                    let rest: Vec<VertexId> =
                        cells[target].iter().copied().filter(|&w| w != v).collect();
                    branch.splice(target..=target, [vec![v], rest]);
                    self.search(branch);
                }
            }
        }
    }
}

fn run(graph: &TrivalentGraph) -> (Vec<u8>, Vec<VertexId>) {
    let n = graph.vertex_count();
    let mut mult = vec![vec![0u8; n]; n];
    for &(u, v) in graph.edges() {
        if u == v {
            // loops enter the signature on the diagonal
            mult[u][u] += 1;
        } else {
            mult[u][v] += 1;
            mult[v][u] += 1;
        }
    }
    let mut s = Search {
        mult,
        edges: graph.edges(),
        best: None,
    };
    s.search(vec![(0..n).collect()]);
    s.best.expect("search visits at least one leaf")
}

pub fn canonical_certificate(graph: &TrivalentGraph) -> CanonicalCertificate {
    CanonicalCertificate(run(graph).0)
}

/// The graph relabeled into canonical position: vertices renumbered by the
/// winning labeling, edges sorted by their endpoint pair. Edge names follow
/// their edges.
pub fn canonical_form(graph: &TrivalentGraph) -> TrivalentGraph {
    let (_, labeling) = run(graph);
    let mut order: Vec<EdgeId> = (0..graph.edge_count()).collect();
    let key = |e: EdgeId| {
        let (u, v) = graph.edges()[e];
        let (a, b) = (labeling[u], labeling[v]);
        (a.min(b), a.max(b))
    };
    order.sort_by_key(|&e| (key(e), e));
    graph.relabeled(&labeling, &order)
}
