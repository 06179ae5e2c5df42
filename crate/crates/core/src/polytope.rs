//! The moment polytope in action coordinates `c in [0, 1]^E`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TrivalentGraph};
use crate::verlinde::{fusion_count_with, ContractionOptions};
use crate::weights::{all_labelings, is_admissible, label_space_size, ActionPoint};

/// `sum coeff * c[edge] <= rhs` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Constraint {
    pub terms: Vec<(EdgeId, i64)>,
    pub rhs: i64,
}

impl Constraint {
    fn new(raw: impl IntoIterator<Item = (EdgeId, i64)>, rhs: i64) -> Option<Self> {
        let mut terms: Vec<(EdgeId, i64)> = Vec::new();
        for (e, c) in raw {
            match terms.iter_mut().find(|(x, _)| *x == e) {
                Some(t) => t.1 += c,
                None => terms.push((e, c)),
            }
        }
        terms.retain(|&(_, c)| c != 0);
        terms.sort_unstable();
        if terms.is_empty() {
            // 0 <= rhs is either vacuous or infeasible; only the former arises
            debug_assert!(rhs >= 0);
            return None;
        }
        Some(Constraint { terms, rhs })
    }

    /// Exact test at `c = labels / scale`.
    pub fn holds_scaled(&self, labels: &[i64], scale: i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(e, c)| c * labels[e]).sum();
        lhs <= self.rhs * scale
    }

    fn holds_f64(&self, x: &[f64]) -> bool {
        let lhs: f64 = self.terms.iter().map(|&(e, c)| c as f64 * x[e]).sum();
        lhs <= self.rhs as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polytope {
    pub dimension: usize,
    /// Box constraints first, then vertex constraints, deduplicated.
    pub constraints: Vec<Constraint>,
}

pub fn polytope_of_graph(graph: &TrivalentGraph) -> Polytope {
    let mut seen = BTreeSet::new();
    let mut constraints = Vec::new();
    let mut push = |c: Option<Constraint>| {
        if let Some(c) = c {
            if seen.insert(c.clone()) {
                constraints.push(c);
            }
        }
    };
    for e in 0..graph.edge_count() {
        push(Constraint::new([(e, -1)], 0));
        push(Constraint::new([(e, 1)], 1));
    }
    for t in graph.vertex_triples() {
        let [l, m, n] = t.edges;
        for (x, y, z) in [(l, m, n), (m, n, l), (n, l, m)] {
            push(Constraint::new([(x, 1), (y, -1), (z, -1)], 0));
        }
        push(Constraint::new([(l, 1), (m, 1), (n, 1)], 2));
    }
    Polytope {
        dimension: graph.edge_count(),
        constraints,
    }
}

impl Polytope {
    pub fn contains(&self, point: &ActionPoint) -> Result<bool> {
        if point.dimension() != self.dimension {
            return Err(Error::Dimension {
                expected: self.dimension,
                found: point.dimension(),
            });
        }
        Ok(self.constraints.iter().all(|c| {
            let lhs: Ratio<i64> = c.terms.iter().map(|&(e, k)| point.coords[e] * k).sum();
            lhs <= Ratio::from_integer(c.rhs)
        }))
    }

    /// Membership of `labels / scale` in integer arithmetic.
    pub fn contains_scaled(&self, labels: &[i64], scale: i64) -> bool {
        self.constraints
            .iter()
            .all(|c| c.holds_scaled(labels, scale))
    }

    fn contains_f64(&self, x: &[f64]) -> bool {
        self.constraints.iter().all(|c| c.holds_f64(x))
    }
}

pub fn contains(polytope: &Polytope, point: &ActionPoint) -> Result<bool> {
    polytope.contains(point)
}

/// Lattice points of the polytope at scale `1/k` against admissible weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeCheck {
    pub level: u32,
    pub admissible: u128,
    /// Points `a/k` of the polytope with even label sum at every vertex.
    pub parity_lattice_points: u128,
    /// Both sets coincide point by point.
    pub agreement: bool,
}

/// Walks every labeling in `0..=k` and compares admissibility with
/// membership plus vertex parity.
pub fn lattice_check(graph: &TrivalentGraph, level: u32, max_count: u128) -> Result<LatticeCheck> {
    if level == 0 {
        return Err(Error::LevelZero);
    }
    if label_space_size(graph, level) > max_count {
        return Err(Error::Budget { cap: max_count });
    }
    let polytope = polytope_of_graph(graph);
    let triples = graph.vertex_triples();
    let (mut admissible, mut lattice, mut agreement) = (0u128, 0u128, true);
    for w in all_labelings(graph, level) {
        let ok = is_admissible(graph, &w)?.is_ok();
        let labels: Vec<i64> = w.labels().iter().map(|&a| a as i64).collect();
        let inside = polytope.contains_scaled(&labels, level as i64)
            && triples
                .iter()
                .all(|t| t.edges.iter().map(|&e| labels[e]).sum::<i64>() % 2 == 0);
        admissible += ok as u128;
        lattice += inside as u128;
        agreement &= ok == inside;
    }
    Ok(LatticeCheck {
        level,
        admissible,
        parity_lattice_points: lattice,
        agreement,
    })
}

/// Minimum sample count accepted by [`volume_mc`].
pub const MIN_SAMPLES: u64 = 10_000;
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    /// `2 zeta(2g-2) / (2 pi)^(g-1)`, reported for comparison only.
    pub paper_value: f64,
}

/// Hit-or-miss estimate of the Euclidean volume over the unit box.
///
/// Samples are split into fixed chunks; chunk `i` draws from a ChaCha8
/// stream seeded with `seed` on stream `i`, and hits are summed as integers,
/// so the estimate does not depend on the worker count.
pub fn volume_mc(polytope: &Polytope, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            samples,
            min: MIN_SAMPLES,
        });
    }
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let n = CHUNK.min(samples - i * CHUNK);
            let mut x = vec![0.0; polytope.dimension];
            let mut hits = 0u64;
            for _ in 0..n {
                for xi in x.iter_mut() {
                    *xi = rng.random::<f64>();
                }
                hits += polytope.contains_f64(&x) as u64;
            }
            hits
        })
        .sum();
    let n = samples as f64;
    let mean = hits as f64 / n;
    // sample standard deviation of the 0/1 indicators
    let var = (hits as f64 - n * mean * mean) / (n - 1.0);
    let genus = (polytope.dimension as u32 + 3) / 3;
    Ok(VolumeEstimate {
        mean,
        stderr: (var.max(0.0) / n).sqrt(),
        samples,
        seed,
        paper_value: paper_volume(genus),
    })
}

/// Riemann zeta at an integer `s >= 2` by direct summation of the first
/// million terms plus the Euler-Maclaurin tail.
pub fn zeta(s: u32) -> f64 {
    const N: u64 = 1_000_000;
    let s = s as f64;
    // smallest terms first
    let head: f64 = (1..=N).rev().map(|n| (n as f64).powf(-s)).sum();
    let nf = N as f64;
    let tail = nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0;
    head + tail
}

/// `2 zeta(2g-2) / (2 pi)^(g-1)`.
pub fn paper_volume(genus: u32) -> f64 {
    2.0 * zeta(2 * genus - 2) / (2.0 * std::f64::consts::PI).powi(genus as i32 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticsRow {
    pub k: u32,
    pub count: u128,
    pub ratio_num: u128,
    pub ratio_den: u128,
}

impl AsymptoticsRow {
    pub fn ratio(&self) -> f64 {
        self.ratio_num as f64 / self.ratio_den as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsTable {
    pub rows: Vec<AsymptoticsRow>,
    /// Ratios strictly decrease along increasing `k`.
    pub monotone_decreasing: bool,
    /// Parity-constrained count over the count of all lattice points of the
    /// polytope, at the largest `k`.
    pub density_num: u128,
    pub density_den: u128,
    /// `2^-(V-1)`: one independent parity constraint per vertex but one.
    pub expected_density_den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduced(num: u128, den: u128) -> (u128, u128) {
    let g = gcd(num, den).max(1);
    (num / g, den / g)
}

/// `N_k / k^(3g-3)` for each level, plus the measured lattice density.
pub fn lattice_asymptotics(graph: &TrivalentGraph, levels: &[u32]) -> Result<AsymptoticsTable> {
    let mut sorted: Vec<u32> = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let top = *sorted.last().ok_or(Error::LevelZero)?;
    let mut rows = Vec::with_capacity(sorted.len());
    for &k in &sorted {
        let count = fusion_count_with(graph, k, ContractionOptions::default())?;
        let (ratio_num, ratio_den) = reduced(count, (k as u128).pow(graph.edge_count() as u32));
        rows.push(AsymptoticsRow {
            k,
            count,
            ratio_num,
            ratio_den,
        });
    }
    let monotone_decreasing = rows
        .windows(2)
        .all(|w| w[1].ratio_num * w[0].ratio_den < w[0].ratio_num * w[1].ratio_den);
    let all_points = fusion_count_with(
        graph,
        top,
        ContractionOptions {
            parity: false,
            ..ContractionOptions::default()
        },
    )?;
    let (density_num, density_den) = reduced(rows.last().unwrap().count, all_points);
    Ok(AsymptoticsTable {
        rows,
        monotone_decreasing,
        density_num,
        density_den,
        expected_density_den: 1u128 << (graph.vertex_count() - 1),
    })
}
