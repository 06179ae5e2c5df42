//! Trivalent multigraphs: the dual graphs of trinion (pants) decompositions.
//!
//! A genus-`g` graph has `2g-2` vertices and `3g-3` edges, every vertex has
//! degree three, loops are allowed and count twice toward the degree.

mod canon;
mod format;
mod gamma0;
mod generate;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::GraphError;

pub use canon::{canonical_certificate, canonical_form, CanonicalCertificate};
pub use gamma0::{gamma0, Gamma0Edges};
pub use generate::{enumerate_by_backtracking, enumerate_trivalent_graphs, MAX_GENUS};

/// Index of an edge in [`TrivalentGraph::edges`].
pub type EdgeId = usize;
/// Index of a vertex, `0..vertex_count`.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrivalentGraph {
    genus: u32,
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    names: BTreeMap<EdgeId, String>,
}

/// The three edge slots around one vertex. A loop fills two slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexTriple {
    pub vertex: VertexId,
    pub edges: [EdgeId; 3],
}

impl VertexTriple {
    /// Edge ids in the triple that are loops at this vertex (each listed once).
    pub fn loop_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        let e = self.edges;
        (0..3).filter_map(move |i| {
            if i + 1 < 3 && e[i] == e[i + 1] && (i == 0 || e[i - 1] != e[i]) {
                Some(e[i])
            } else {
                None
            }
        })
    }
}

/// Checks every structural invariant of a trivalent graph of genus `genus`.
///
/// Checks run in a fixed order (endpoints, degrees, connectivity, counts) and
/// the first failure is reported.
pub fn validate(
    genus: u32,
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
) -> Result<(), GraphError> {
    if genus < 2 {
        return Err(GraphError::GenusTooSmall(genus));
    }
    let mut degree = vec![0usize; vertex_count];
    for (id, &(u, v)) in edges.iter().enumerate() {
        for endpoint in [u, v] {
            if endpoint >= vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    edge: id,
                    endpoint,
                    vertex_count,
                });
            }
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some((vertex, &d)) = degree.iter().enumerate().find(|(_, &d)| d != 3) {
        return Err(GraphError::Degree { vertex, degree: d });
    }
    if !is_connected(vertex_count, edges.iter().copied()) {
        return Err(GraphError::Disconnected);
    }
    let expected_v = 2 * genus as usize - 2;
    if vertex_count != expected_v {
        return Err(GraphError::VertexCount {
            expected: expected_v,
            found: vertex_count,
        });
    }
    let expected_e = 3 * genus as usize - 3;
    if edges.len() != expected_e {
        return Err(GraphError::EdgeCount {
            expected: expected_e,
            found: edges.len(),
        });
    }
    Ok(())
}

fn is_connected(vertex_count: usize, edges: impl Iterator<Item = (VertexId, VertexId)>) -> bool {
    if vertex_count == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = vertex_count;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1
}

impl TrivalentGraph {
    /// Builds a validated graph. Endpoint pairs are stored as `(min, max)`.
    pub fn new(
        genus: u32,
        vertex_count: usize,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        validate(genus, vertex_count, &edges)?;
        let edges = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Ok(TrivalentGraph {
            genus,
            vertex_count,
            edges,
            names: BTreeMap::new(),
        })
    }

    /// Attaches names to edges. Unknown edge ids are ignored.
    pub fn with_names(mut self, names: BTreeMap<EdgeId, String>) -> Self {
        let edge_count = self.edges.len();
        self.names = names.into_iter().filter(|(e, _)| *e < edge_count).collect();
        self
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn names(&self) -> &BTreeMap<EdgeId, String> {
        &self.names
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.names
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .map(|(&e, _)| e)
    }

    pub fn is_loop(&self, edge: EdgeId) -> bool {
        let (u, v) = self.edges[edge];
        u == v
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// First Betti number `E - V + 1`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// Re-runs [`validate`] on the stored data.
    pub fn validate(&self) -> Result<(), GraphError> {
        validate(self.genus, self.vertex_count, &self.edges)
    }

    /// One triple per vertex; a loop edge id is repeated twice.
    pub fn vertex_triples(&self) -> Vec<VertexTriple> {
        let mut slots: Vec<Vec<EdgeId>> = vec![Vec::with_capacity(3); self.vertex_count];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            slots[u].push(id);
            slots[v].push(id);
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(vertex, mut s)| {
                s.sort_unstable();
                VertexTriple {
                    vertex,
                    edges: [s[0], s[1], s[2]],
                }
            })
            .collect()
    }

    /// Edges whose removal disconnects the graph. Loops are never bridges.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                adj[u].push((v, id));
                adj[v].push((u, id));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = BTreeSet::new();
        let mut time = 0;
        // iterative DFS; the tree edge is skipped by id so parallel edges count as back edges
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (u, parent_edge, ref mut next)) = stack.last_mut() {
                if *next < adj[u].len() {
                    let (w, id) = adj[u][*next];
                    *next += 1;
                    if Some(id) == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(id), 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(id), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.insert(id);
                        }
                    }
                }
            }
        }
        out
    }

    /// True when removing `edge` leaves the graph connected.
    pub fn connected_without(&self, edge: EdgeId) -> bool {
        is_connected(
            self.vertex_count,
            self.edges
                .iter()
                .enumerate()
                .filter(|(id, _)| *id != edge)
                .map(|(_, &e)| e),
        )
    }

    /// The same graph with vertices renamed by `vertex_map` and edges reordered
    /// by `edge_order` (new id `i` is old edge `edge_order[i]`).
    pub fn relabeled(&self, vertex_map: &[VertexId], edge_order: &[EdgeId]) -> TrivalentGraph {
        let edges = edge_order
            .iter()
            .map(|&old| {
                let (u, v) = self.edges[old];
                let (a, b) = (vertex_map[u], vertex_map[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        let names = edge_order
            .iter()
            .enumerate()
            .filter_map(|(new, old)| self.names.get(old).map(|n| (new, n.clone())))
            .collect();
        TrivalentGraph {
            genus: self.genus,
            vertex_count: self.vertex_count,
            edges,
            names,
        }
    }

    pub fn certificate(&self) -> CanonicalCertificate {
        canonical_certificate(self)
    }

    pub fn to_text(&self) -> String {
        format::to_text(self)
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        format::from_text(text)
    }

    /// The theta graph: two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        TrivalentGraph::new(2, 2, vec![(0, 1), (0, 1), (0, 1)]).expect("theta graph is valid")
    }

    /// Two loops joined by a bridge: edges are loop at 0, bridge, loop at 1.
    pub fn dumbbell() -> Self {
        TrivalentGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 1)]).expect("dumbbell graph is valid")
    }

    pub(crate) fn from_parts_unchecked(
        genus: u32,
        vertex_count: usize,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Self {
        debug_assert!(validate(genus, vertex_count, &edges).is_ok());
        TrivalentGraph {
            genus,
            vertex_count,
            edges: edges
                .into_iter()
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect(),
            names: BTreeMap::new(),
        }
    }
}
