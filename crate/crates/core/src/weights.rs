//! Admissible integer weights of level `k` on a trivalent graph.
//!
//! A weight is stored in the integer encoding `a(E) = 2k * w(E)`, so
//! `a(E)` ranges over `0..=k`. In that encoding the admissibility conditions
//! read, for bridges and for every vertex triple `(l, m, n)` (a loop
//! contributes its label twice):
//!
//! 0. `a(E)` is even on every bridge;
//! 1. `a_l + a_m + a_n` is even;
//! 2. `a_l + a_m + a_n <= 2k`;
//! 3. each label is at most the sum of the other two.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Gamma0Edges, TrivalentGraph, VertexId};

/// Default cap on the number of weights materialized by one enumeration.
pub const DEFAULT_MAX_COUNT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    level: u32,
    labels: Vec<u32>,
}

impl WeightVector {
    pub fn new(level: u32, labels: Vec<u32>) -> Result<Self> {
        if level == 0 {
            return Err(Error::LevelZero);
        }
        if let Some((edge, &label)) = labels.iter().enumerate().find(|(_, &a)| a > level) {
            return Err(Error::LabelOutOfRange { edge, label, level });
        }
        Ok(WeightVector { level, labels })
    }

    pub fn zero(level: u32, edge_count: usize) -> Self {
        WeightVector {
            level,
            labels: vec![0; edge_count],
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, edge: EdgeId) -> u32 {
        self.labels[edge]
    }

    /// Labels doubled at doubled level.
    pub fn doubled(&self) -> Self {
        WeightVector {
            level: 2 * self.level,
            labels: self.labels.iter().map(|a| 2 * a).collect(),
        }
    }
}

/// Why a labeling is not admissible. Vertex failures name the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Failure {
    BridgeParity { edge: EdgeId },
    VertexParity { vertex: VertexId },
    SumBound { vertex: VertexId },
    Triangle { vertex: VertexId },
}

fn check_shape(graph: &TrivalentGraph, weight: &WeightVector) -> Result<()> {
    if weight.labels.len() != graph.edge_count() {
        return Err(Error::LabelCount {
            expected: graph.edge_count(),
            found: weight.labels.len(),
        });
    }
    Ok(())
}

/// Conditions 1-3 on one vertex triple.
pub(crate) fn vertex_rule(a: u32, b: u32, c: u32, level: u32) -> Option<VertexRuleFailure> {
    let sum = a + b + c;
    if !sum.is_multiple_of(2) {
        Some(VertexRuleFailure::Parity)
    } else if sum > 2 * level {
        Some(VertexRuleFailure::SumBound)
    } else if 2 * a.max(b).max(c) > sum {
        Some(VertexRuleFailure::Triangle)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum VertexRuleFailure {
    Parity,
    SumBound,
    Triangle,
}

/// Decides admissibility; `Ok(Err(failure))` names the first failed condition.
pub fn is_admissible(
    graph: &TrivalentGraph,
    weight: &WeightVector,
) -> Result<std::result::Result<(), Failure>> {
    check_shape(graph, weight)?;
    WeightVector::new(weight.level, weight.labels.clone())?;
    let a = &weight.labels;
    for edge in graph.bridges() {
        if !a[edge].is_multiple_of(2) {
            return Ok(Err(Failure::BridgeParity { edge }));
        }
    }
    for t in graph.vertex_triples() {
        let [l, m, n] = t.edges;
        if let Some(f) = vertex_rule(a[l], a[m], a[n], weight.level) {
            let vertex = t.vertex;
            return Ok(Err(match f {
                VertexRuleFailure::Parity => Failure::VertexParity { vertex },
                VertexRuleFailure::SumBound => Failure::SumBound { vertex },
                VertexRuleFailure::Triangle => Failure::Triangle { vertex },
            }));
        }
    }
    Ok(Ok(()))
}

/// Size of the unrestricted label space `(k+1)^(3g-3)`.
pub fn label_space_size(graph: &TrivalentGraph, level: u32) -> u128 {
    (level as u128 + 1).pow(graph.edge_count() as u32)
}

/// Every labeling in `{0..=k}^E`, lexicographic by edge id.
pub fn all_labelings(graph: &TrivalentGraph, level: u32) -> impl Iterator<Item = WeightVector> {
    let edges = graph.edge_count();
    let mut next = Some(vec![0u32; edges]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = edges;
        let mut carried = true;
        while carried && i > 0 {
            i -= 1;
            if succ[i] < level {
                succ[i] += 1;
                carried = false;
            } else {
                succ[i] = 0;
            }
        }
        if !carried {
            next = Some(succ);
        }
        Some(WeightVector {
            level,
            labels: current,
        })
    })
}

struct Enumerator<'a> {
    level: u32,
    cap: u128,
    // per edge: vertex triples closed once this edge is labeled
    closing: Vec<Vec<[EdgeId; 3]>>,
    // per edge: endpoints (for partial sum pruning)
    endpoints: Vec<(VertexId, VertexId)>,
    even_edges: Vec<bool>,
    partial: Vec<u32>,
    labels: Vec<u32>,
    out: &'a mut Vec<WeightVector>,
}

impl Enumerator<'_> {
    fn descend(&mut self, edge: EdgeId) -> Result<()> {
        if edge == self.labels.len() {
            if self.out.len() as u128 >= self.cap {
                return Err(Error::Budget { cap: self.cap });
            }
            self.out.push(WeightVector {
                level: self.level,
                labels: self.labels.clone(),
            });
            return Ok(());
        }
        let (u, v) = self.endpoints[edge];
        let step = if self.even_edges[edge] { 2 } else { 1 };
        let mut a = 0;
        while a <= self.level {
            self.labels[edge] = a;
            self.partial[u] += a;
            self.partial[v] += a;
            let feasible = self.partial[u] <= 2 * self.level
                && self.partial[v] <= 2 * self.level
                && self.closing[edge].iter().all(|&[l, m, n]| {
                    vertex_rule(self.labels[l], self.labels[m], self.labels[n], self.level)
                        .is_none()
                });
            if feasible {
                self.descend(edge + 1)?;
            }
            self.partial[u] -= a;
            self.partial[v] -= a;
            if self.partial[u] + a > 2 * self.level || self.partial[v] + a > 2 * self.level {
                break;
            }
            a += step;
        }
        self.labels[edge] = 0;
        Ok(())
    }
}

fn enumerate_inner(
    graph: &TrivalentGraph,
    level: u32,
    cap: u128,
    enforce_bridges: bool,
) -> Result<Vec<WeightVector>> {
    if level == 0 {
        return Err(Error::LevelZero);
    }
    let bridges: BTreeSet<EdgeId> = if enforce_bridges {
        graph.bridges()
    } else {
        BTreeSet::new()
    };
    let mut closing = vec![Vec::new(); graph.edge_count()];
    for t in graph.vertex_triples() {
        let last = *t.edges.iter().max().unwrap();
        closing[last].push(t.edges);
    }
    let mut out = Vec::new();
    let mut e = Enumerator {
        level,
        cap,
        closing,
        endpoints: graph.edges().to_vec(),
        even_edges: (0..graph.edge_count())
            .map(|i| bridges.contains(&i))
            .collect(),
        partial: vec![0; graph.vertex_count()],
        labels: vec![0; graph.edge_count()],
        out: &mut out,
    };
    e.descend(0)?;
    Ok(out)
}

/// All admissible weights, lexicographic by edge id. Fails with
/// [`Error::Budget`] rather than truncating when more than `max_count`
/// weights exist.
pub fn enumerate_weights(
    graph: &TrivalentGraph,
    level: u32,
    max_count: u128,
) -> Result<Vec<WeightVector>> {
    enumerate_inner(graph, level, max_count, true)
}

/// Enumeration with the bridge-parity condition switched off.
pub fn enumerate_weights_without_condition0(
    graph: &TrivalentGraph,
    level: u32,
    max_count: u128,
) -> Result<Vec<WeightVector>> {
    enumerate_inner(graph, level, max_count, false)
}

/// Number of admissible weights, computed by fusion-tensor contraction.
pub fn count_weights(graph: &TrivalentGraph, level: u32) -> Result<u128> {
    crate::verlinde::fusion_count_contraction(graph, level)
}

/// True when dropping the bridge-parity condition changes nothing: vertex
/// parity already forces every bridge label to be even.
pub fn condition0_redundancy_check(graph: &TrivalentGraph, level: u32) -> Result<bool> {
    let with = enumerate_weights(graph, level, DEFAULT_MAX_COUNT)?;
    let without = enumerate_weights_without_condition0(graph, level, DEFAULT_MAX_COUNT)?;
    Ok(with == without)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianSplit {
    pub abelian: Vec<WeightVector>,
    pub non_abelian: Vec<WeightVector>,
}

/// Splits the weights of a chain graph into those vanishing on every `c`
/// edge with equal labels across each double edge, and the rest.
pub fn abelian_filter(
    gamma0: &TrivalentGraph,
    level: u32,
    max_count: u128,
) -> Result<AbelianSplit> {
    let names = Gamma0Edges::from_names(gamma0).ok_or(Error::MissingGamma0Names)?;
    let (abelian, non_abelian) = enumerate_weights(gamma0, level, max_count)?
        .into_iter()
        .partition(|w| is_abelian(&names, w));
    Ok(AbelianSplit {
        abelian,
        non_abelian,
    })
}

pub fn is_abelian(names: &Gamma0Edges, weight: &WeightVector) -> bool {
    names.c.iter().all(|&e| weight.label(e) == 0)
        && names
            .paired
            .iter()
            .all(|&(a, b)| weight.label(a) == weight.label(b))
}

/// Which scaling of the weight a point uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ActionScale {
    /// `c = 2w = a/k`, coordinates in `[0, 1]`.
    #[default]
    Doubled,
    /// `w = a/2k`, coordinates in `[0, 1/2]`.
    Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionPoint {
    pub coords: Vec<Ratio<i64>>,
}

impl ActionPoint {
    pub fn dimension(&self) -> usize {
        self.coords.len()
    }
}

pub fn weight_to_action_point(weight: &WeightVector) -> ActionPoint {
    weight_to_point(weight, ActionScale::Doubled)
}

pub fn weight_to_point(weight: &WeightVector, scale: ActionScale) -> ActionPoint {
    let den = match scale {
        ActionScale::Doubled => weight.level as i64,
        ActionScale::Weight => 2 * weight.level as i64,
    };
    ActionPoint {
        coords: weight
            .labels
            .iter()
            .map(|&a| Ratio::new(a as i64, den))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(level: u32, labels: &[u32]) -> WeightVector {
        WeightVector::new(level, labels.to_vec()).unwrap()
    }

    #[test]
    fn theta_level_one() {
        let t = TrivalentGraph::theta();
        assert_eq!(is_admissible(&t, &w(1, &[1, 1, 0])).unwrap(), Ok(()));
        assert_eq!(
            is_admissible(&t, &w(1, &[1, 0, 0])).unwrap(),
            Err(Failure::VertexParity { vertex: 0 })
        );
        let all = enumerate_weights(&t, 1, DEFAULT_MAX_COUNT).unwrap();
        let labels: Vec<_> = all.iter().map(|x| x.labels().to_vec()).collect();
        assert_eq!(
            labels,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn dumbbell_bridge_parity_reported_first() {
        let d = TrivalentGraph::dumbbell();
        assert_eq!(
            is_admissible(&d, &w(2, &[1, 1, 1])).unwrap(),
            Err(Failure::BridgeParity { edge: 1 })
        );
        let all = enumerate_weights(&d, 1, DEFAULT_MAX_COUNT).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|x| x.label(1) == 0));
    }

    #[test]
    fn shape_errors() {
        let t = TrivalentGraph::theta();
        assert!(matches!(
            is_admissible(&t, &w(1, &[1, 1])),
            Err(Error::LabelCount { .. })
        ));
        assert!(matches!(
            WeightVector::new(1, vec![2, 0, 0]),
            Err(Error::LabelOutOfRange {
                edge: 0,
                label: 2,
                level: 1
            })
        ));
        assert!(matches!(
            WeightVector::new(0, vec![]),
            Err(Error::LevelZero)
        ));
        assert!(matches!(
            enumerate_weights(&t, 0, 10),
            Err(Error::LevelZero)
        ));
    }

    #[test]
    fn budget_is_reported() {
        let t = TrivalentGraph::theta();
        assert_eq!(enumerate_weights(&t, 2, 3), Err(Error::Budget { cap: 3 }));
        assert_eq!(enumerate_weights(&t, 2, 10).unwrap().len(), 10);
    }

    #[test]
    fn label_space_iterator() {
        let t = TrivalentGraph::theta();
        assert_eq!(
            all_labelings(&t, 2).count() as u128,
            label_space_size(&t, 2)
        );
        assert_eq!(label_space_size(&t, 2), 27);
    }

    #[test]
    fn action_points() {
        let p = weight_to_action_point(&w(1, &[1, 1, 0]));
        assert_eq!(
            p.coords,
            vec![
                Ratio::from_integer(1),
                Ratio::from_integer(1),
                Ratio::from_integer(0)
            ]
        );
        let p = weight_to_action_point(&w(4, &[2, 2, 2]));
        assert!(p.coords.iter().all(|c| *c == Ratio::new(1, 2)));
        let q = weight_to_point(&w(4, &[2, 2, 2]), ActionScale::Weight);
        assert!(q.coords.iter().all(|c| *c == Ratio::new(1, 4)));
    }
}
