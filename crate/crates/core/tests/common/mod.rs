//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own admissibility or canonical labeling code.

#![allow(dead_code)]

use trinion_core::graph::TrivalentGraph;

/// Incident labels at each vertex, a loop contributing twice.
pub fn incident_labels(graph: &TrivalentGraph, labels: &[u32]) -> Vec<Vec<u32>> {
    let mut at = vec![Vec::new(); graph.vertex_count()];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        at[u].push(labels[e]);
        at[v].push(labels[e]);
    }
    at
}

fn reachable(graph: &TrivalentGraph, skip: usize) -> usize {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if e == skip {
                continue;
            }
            let other = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Edges whose removal disconnects the graph, by deleting each in turn.
pub fn brute_bridges(graph: &TrivalentGraph) -> Vec<usize> {
    (0..graph.edge_count())
        .filter(|&e| reachable(graph, e) < graph.vertex_count())
        .collect()
}

/// Admissibility straight from the definition.
pub fn brute_admissible(graph: &TrivalentGraph, labels: &[u32], k: u32, bridge_rule: bool) -> bool {
    if bridge_rule && brute_bridges(graph).iter().any(|&e| labels[e] % 2 == 1) {
        return false;
    }
    incident_labels(graph, labels).iter().all(|t| {
        let s: u32 = t.iter().sum();
        s.is_multiple_of(2) && s <= 2 * k && t.iter().all(|&x| 2 * x <= s)
    })
}

/// Every labeling in `0..=k`, in lexicographic order.
pub fn labelings(edges: usize, k: u32) -> impl Iterator<Item = Vec<u32>> {
    let d = k as u64 + 1;
    (0..d.pow(edges as u32)).map(move |mut i| {
        let mut x = vec![0; edges];
        for slot in x.iter_mut().rev() {
            *slot = (i % d) as u32;
            i /= d;
        }
        x
    })
}

pub fn brute_count(graph: &TrivalentGraph, k: u32) -> u128 {
    labelings(graph.edge_count(), k)
        .filter(|a| brute_admissible(graph, a, k, true))
        .count() as u128
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn edge_multiset(edges: &[(usize, usize)], map: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = edges
        .iter()
        .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
        .collect();
    out.sort_unstable();
    out
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_isomorphic(a: &TrivalentGraph, b: &TrivalentGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let identity: Vec<usize> = (0..b.vertex_count()).collect();
    let target = edge_multiset(b.edges(), &identity);
    permutations(a.vertex_count())
        .iter()
        .any(|p| edge_multiset(a.edges(), p) == target)
}

/// `(k+2)^(g-1)/2^(g-1) * sum_n sin(n pi/(k+2))^(2-2g)` in plain f64.
pub fn verlinde_f64(g: u32, k: u32) -> f64 {
    let m = (k + 2) as f64;
    let s: f64 = (1..=k + 1)
        .map(|n| {
            (n as f64 * std::f64::consts::PI / m)
                .sin()
                .powi(2 - 2 * g as i32)
        })
        .sum();
    (m / 2.0).powi(g as i32 - 1) * s
}
