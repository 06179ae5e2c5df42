//! Exact fusion counting by variable elimination.
//!
//! Every vertex contributes a 0/1 factor over its incident edge labels (a loop
//! makes it a two-variable factor). Edges are summed out one at a time in
//! greedy minimum-degree order on the edge interaction graph, ties broken by
//! edge id.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TrivalentGraph};
use crate::weights::vertex_rule;

/// Largest intermediate table the contraction will allocate by default.
pub const DEFAULT_MAX_ENTRIES: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionOptions {
    /// Require even vertex sums (condition 1). Switching it off counts all
    /// lattice points of the polytope.
    pub parity: bool,
    pub max_entries: u128,
}

impl Default for ContractionOptions {
    fn default() -> Self {
        ContractionOptions {
            parity: true,
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }
}

#[derive(Debug, Clone)]
struct Factor {
    vars: Vec<EdgeId>,
    table: Vec<u128>,
}

pub fn fusion_count_contraction(graph: &TrivalentGraph, level: u32) -> Result<u128> {
    fusion_count_with(graph, level, ContractionOptions::default())
}

/// The elimination order used for `graph`.
pub fn elimination_order(graph: &TrivalentGraph) -> Vec<EdgeId> {
    let mut adjacency: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); graph.edge_count()];
    for t in graph.vertex_triples() {
        for &x in &t.edges {
            for &y in &t.edges {
                if x != y {
                    adjacency[x].insert(y);
                }
            }
        }
    }
    let mut alive: BTreeSet<EdgeId> = (0..graph.edge_count()).collect();
    let mut order = Vec::with_capacity(alive.len());
    while let Some(&next) = alive.iter().min_by_key(|&&e| (adjacency[e].len(), e)) {
        let neighbours: Vec<EdgeId> = adjacency[next].iter().copied().collect();
        for &a in &neighbours {
            adjacency[a].remove(&next);
            for &b in &neighbours {
                if a != b {
                    adjacency[a].insert(b);
                }
            }
        }
        alive.remove(&next);
        order.push(next);
    }
    order
}

pub fn fusion_count_with(
    graph: &TrivalentGraph,
    level: u32,
    options: ContractionOptions,
) -> Result<u128> {
    if level == 0 {
        return Err(Error::LevelZero);
    }
    let d = level as usize + 1;
    let mut factors: Vec<Factor> = graph
        .vertex_triples()
        .into_iter()
        .map(|t| vertex_factor(t.edges, level, options.parity))
        .collect();
    for var in elimination_order(graph) {
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&var));
        factors = rest;
        let union: BTreeSet<EdgeId> = touching
            .iter()
            .flat_map(|f| f.vars.iter().copied())
            .collect();
        let entries = (d as u128).pow(union.len() as u32);
        if entries > options.max_entries {
            return Err(Error::ContractionWidth {
                entries,
                bound: options.max_entries,
            });
        }
        factors.push(eliminate(
            &touching,
            &union.into_iter().collect::<Vec<_>>(),
            var,
            d,
        ));
    }
    // all variables are gone; what is left are scalars
    Ok(factors.iter().map(|f| f.table[0]).product())
}

fn vertex_factor(edges: [EdgeId; 3], level: u32, parity: bool) -> Factor {
    let vars: Vec<EdgeId> = edges
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let d = level as usize + 1;
    let mut table = vec![0u128; d.pow(vars.len() as u32)];
    let mut assignment = vec![0u32; vars.len()];
    for (idx, slot) in table.iter_mut().enumerate() {
        let mut rem = idx;
        for a in assignment.iter_mut().rev() {
            *a = (rem % d) as u32;
            rem /= d;
        }
        let value = |e: EdgeId| assignment[vars.iter().position(|&v| v == e).unwrap()];
        let (x, y, z) = (value(edges[0]), value(edges[1]), value(edges[2]));
        let ok = match vertex_rule(x, y, z, level) {
            None => true,
            Some(crate::weights::VertexRuleFailure::Parity) => {
                !parity && (x + y + z) <= 2 * level && 2 * x.max(y).max(z) <= x + y + z
            }
            Some(_) => false,
        };
        *slot = ok as u128;
    }
    Factor { vars, table }
}

/// Multiplies `factors` over `union` (sorted) and sums out `var`.
fn eliminate(factors: &[Factor], union: &[EdgeId], var: EdgeId, d: usize) -> Factor {
    let out_vars: Vec<EdgeId> = union.iter().copied().filter(|&v| v != var).collect();
    let mut out = vec![0u128; d.pow(out_vars.len() as u32)];
    // strides of each union position inside each factor
    let strides: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            union
                .iter()
                .map(|u| match f.vars.iter().position(|v| v == u) {
                    Some(p) => d.pow((f.vars.len() - 1 - p) as u32),
                    None => 0,
                })
                .collect()
        })
        .collect();
    let out_strides: Vec<usize> = union
        .iter()
        .map(|u| match out_vars.iter().position(|v| v == u) {
            Some(p) => d.pow((out_vars.len() - 1 - p) as u32),
            None => 0,
        })
        .collect();
    let mut digits = vec![0usize; union.len()];
    let total = d.pow(union.len() as u32);
    let mut offsets = vec![0usize; factors.len()];
    let mut out_offset = 0usize;
    for _ in 0..total {
        let mut prod = 1u128;
        for (f, &o) in factors.iter().zip(&offsets) {
            prod *= f.table[o];
            if prod == 0 {
                break;
            }
        }
        out[out_offset] += prod;
        // odometer over union digits, last position fastest
        let mut pos = union.len();
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            for (o, s) in offsets.iter_mut().zip(&strides) {
                *o += s[pos];
            }
            out_offset += out_strides[pos];
            if digits[pos] < d {
                break;
            }
            for (o, s) in offsets.iter_mut().zip(&strides) {
                *o -= s[pos] * d;
            }
            out_offset -= out_strides[pos] * d;
            digits[pos] = 0;
        }
    }
    Factor {
        vars: out_vars,
        table: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_small_graphs() {
        assert_eq!(
            fusion_count_contraction(&TrivalentGraph::theta(), 1).unwrap(),
            4
        );
        assert_eq!(
            fusion_count_contraction(&TrivalentGraph::dumbbell(), 1).unwrap(),
            4
        );
    }

    #[test]
    fn theta_equals_dumbbell_at_level_eight() {
        let t = fusion_count_contraction(&TrivalentGraph::theta(), 8).unwrap();
        let d = fusion_count_contraction(&TrivalentGraph::dumbbell(), 8).unwrap();
        assert_eq!(t, d);
        // (k+2)((k+2)^2-1)/6 at k = 8
        assert_eq!(t, 165);
    }

    #[test]
    fn width_bound_is_enforced() {
        let opts = ContractionOptions {
            parity: true,
            max_entries: 10,
        };
        assert!(matches!(
            fusion_count_with(&TrivalentGraph::theta(), 4, opts),
            Err(Error::ContractionWidth { .. })
        ));
    }

    #[test]
    fn order_covers_all_edges() {
        let mut o = elimination_order(&TrivalentGraph::dumbbell());
        o.sort();
        assert_eq!(o, vec![0, 1, 2]);
    }
}
