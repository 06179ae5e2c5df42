//! Exhaustive generation of trivalent graphs up to isomorphism.
//!
//! [`enumerate_trivalent_graphs`] grows genus `g` from genus `g-1` with two
//! moves: join two subdivision points by a new edge, or hang a loop from one
//! subdivision point. Every connected cubic multigraph with at least four
//! vertices is reached: if it has a loop (and is not the dumbbell) it has a
//! pendant loop to remove, otherwise some non-bridge edge can be deleted and
//! its endpoints smoothed. [`enumerate_by_backtracking`] fills labeled
//! adjacency matrices directly and serves as an independent cross-check.

use std::collections::BTreeMap;

use super::{
    canonical_certificate, canonical_form, CanonicalCertificate, TrivalentGraph, VertexId,
};
use crate::error::GraphError;

/// Largest genus accepted by default.
pub const MAX_GENUS: u32 = 5;

fn check_range(genus: u32, max: u32) -> Result<(), GraphError> {
    if genus < 2 {
        return Err(GraphError::GenusTooSmall(genus));
    }
    if genus > max {
        return Err(GraphError::GenusOutOfRange { genus, max });
    }
    Ok(())
}

fn dedup(graphs: impl IntoIterator<Item = TrivalentGraph>) -> Vec<TrivalentGraph> {
    let mut seen: BTreeMap<CanonicalCertificate, TrivalentGraph> = BTreeMap::new();
    for g in graphs {
        let cert = canonical_certificate(&g);
        seen.entry(cert).or_insert_with(|| canonical_form(&g));
    }
    seen.into_values().collect()
}

/// One canonical representative per isomorphism class, sorted by certificate.
pub fn enumerate_trivalent_graphs(genus: u32) -> Result<Vec<TrivalentGraph>, GraphError> {
    enumerate_trivalent_graphs_up_to(genus, MAX_GENUS)
}

/// As [`enumerate_trivalent_graphs`] with an explicit genus bound.
pub fn enumerate_trivalent_graphs_up_to(
    genus: u32,
    max: u32,
) -> Result<Vec<TrivalentGraph>, GraphError> {
    check_range(genus, max)?;
    let mut level = dedup(labeled_graphs(2));
    for g in 3..=genus {
        level = dedup(
            level
                .iter()
                .flat_map(extensions)
                .map(|(n, e)| TrivalentGraph::from_parts_unchecked(g, n, e)),
        );
    }
    Ok(level)
}

type EdgeList = Vec<(VertexId, VertexId)>;

fn extensions(graph: &TrivalentGraph) -> Vec<(usize, EdgeList)> {
    let n = graph.vertex_count();
    let (x, y) = (n, n + 1);
    let edges = graph.edges();
    let mut out = Vec::new();
    for e1 in 0..edges.len() {
        let (u1, v1) = edges[e1];
        // hang a loop from the midpoint of e1
        let mut pendant: EdgeList = edges.to_vec();
        pendant[e1] = (u1, x);
        pendant.extend([(x, v1), (x, y), (y, y)]);
        out.push((n + 2, pendant));
        // subdivide e1 twice and join the two points
        let mut twice: EdgeList = edges.to_vec();
        twice[e1] = (u1, x);
        twice.extend([(x, y), (y, v1), (x, y)]);
        out.push((n + 2, twice));
        for e2 in e1 + 1..edges.len() {
            let (u2, v2) = edges[e2];
            let mut joined: EdgeList = edges.to_vec();
            joined[e1] = (u1, x);
            joined[e2] = (u2, y);
            joined.extend([(x, v1), (y, v2), (x, y)]);
            out.push((n + 2, joined));
        }
    }
    out
}

/// Every labeled connected cubic multigraph on `2g-2` vertices.
fn labeled_graphs(genus: u32) -> Vec<TrivalentGraph> {
    let n = 2 * genus as usize - 2;
    let mut found = Vec::new();
    let mut remaining = vec![3u8; n];
    let mut edges: EdgeList = Vec::new();
    fill(0, 0, &mut remaining, &mut edges, &mut |edges: &EdgeList| {
        if super::is_connected(n, edges.iter().copied()) {
            found.push(TrivalentGraph::from_parts_unchecked(
                genus,
                n,
                edges.clone(),
            ));
        }
    });
    found
}

/// Completes vertex `v` with partners chosen in nondecreasing order starting
/// at `from`; a partner equal to `v` is a loop.
fn fill(
    v: usize,
    from: usize,
    remaining: &mut [u8],
    edges: &mut EdgeList,
    emit: &mut dyn FnMut(&EdgeList),
) {
    let n = remaining.len();
    if v == n {
        emit(edges);
        return;
    }
    if remaining[v] == 0 {
        fill(v + 1, v + 1, remaining, edges, emit);
        return;
    }
    if from == v && remaining[v] >= 2 {
        remaining[v] -= 2;
        edges.push((v, v));
        fill(v, v + 1, remaining, edges, emit);
        edges.pop();
        remaining[v] += 2;
    }
    for w in from.max(v + 1)..n {
        if remaining[w] == 0 {
            continue;
        }
        remaining[v] -= 1;
        remaining[w] -= 1;
        edges.push((v, w));
        fill(v, w, remaining, edges, emit);
        edges.pop();
        remaining[v] += 1;
        remaining[w] += 1;
    }
}

/// Brute-force generation over labeled adjacency structures followed by
/// certificate deduplication.
pub fn enumerate_by_backtracking(genus: u32) -> Result<Vec<TrivalentGraph>, GraphError> {
    check_range(genus, MAX_GENUS)?;
    Ok(dedup(labeled_graphs(genus)))
}
