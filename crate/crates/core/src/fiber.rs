//! Stabilizer data of a Bohr-Sommerfeld fibre and the invariants that can be
//! read off exactly.
//!
//! Edge tags record the stabilizer of the monodromy around an edge curve:
//! central monodromy (`a in {0, k}`) has all of SU(2) as stabilizer, any other
//! a maximal circle. Vertex tags record the stabilizer of the flat connection
//! on the trinion: SU(2) when all three boundary holonomies are central, a
//! circle when one Clebsch-Gordan constraint is tight (the representation is
//! reducible), otherwise just the centre.

use serde::Serialize;

use crate::graph::{EdgeId, TrivalentGraph, VertexId};
use crate::linalg::{cokernel, rank};
use crate::weights::WeightVector;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupTag {
    Z2,
    U1,
    SU2,
}

impl GroupTag {
    pub fn dimension(self) -> usize {
        match self {
            GroupTag::Z2 => 0,
            GroupTag::U1 => 1,
            GroupTag::SU2 => 3,
        }
    }

    /// Inclusion along `Z2 ⊂ U1 ⊂ SU2`.
    pub fn is_subgroup_of(self, other: GroupTag) -> bool {
        self <= other
    }
}

fn central(a: u32, level: u32) -> bool {
    a == 0 || a == level
}

pub fn edge_group(weight: &WeightVector, edge: EdgeId) -> GroupTag {
    if central(weight.label(edge), weight.level()) {
        GroupTag::SU2
    } else {
        GroupTag::U1
    }
}

pub fn vertex_group(weight: &WeightVector, triple: [EdgeId; 3]) -> GroupTag {
    let k = weight.level();
    let [a, b, c] = triple.map(|e| weight.label(e));
    if [a, b, c].iter().all(|&x| central(x, k)) {
        GroupTag::SU2
    } else if a + b == c || b + c == a || a + c == b || a + b + c == 2 * k {
        GroupTag::U1
    } else {
        GroupTag::Z2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPresentation {
    pub level: u32,
    pub labels: Vec<u32>,
    pub edge_tags: Vec<GroupTag>,
    pub vertex_tags: Vec<GroupTag>,
    /// `(left, right)` vertex acting on each edge factor by `g_l t g_r^-1`;
    /// a loop has the same vertex on both sides.
    pub sides: Vec<(VertexId, VertexId)>,
    pub triples: Vec<[EdgeId; 3]>,
}

impl FiberPresentation {
    /// Vertex tags sit inside every incident edge tag, and two SU(2) edges at
    /// a vertex force the third edge and the vertex to be SU(2).
    pub fn satisfies_inclusions(&self) -> bool {
        self.triples.iter().zip(&self.vertex_tags).all(|(t, &v)| {
            let tags = t.map(|e| self.edge_tags[e]);
            let inside = tags.iter().all(|&e| v.is_subgroup_of(e));
            let su2 = tags.iter().filter(|&&e| e == GroupTag::SU2).count();
            // a loop occupies two slots, so count distinct slots
            inside && (su2 < 2 || (su2 == 3 && v == GroupTag::SU2))
        })
    }

    pub fn edges_never_z2(&self) -> bool {
        self.edge_tags.iter().all(|&t| t != GroupTag::Z2)
    }
}

pub fn fiber_presentation(graph: &TrivalentGraph, weight: &WeightVector) -> FiberPresentation {
    let triples: Vec<[EdgeId; 3]> = graph.vertex_triples().iter().map(|t| t.edges).collect();
    let pres = FiberPresentation {
        level: weight.level(),
        labels: weight.labels().to_vec(),
        edge_tags: (0..graph.edge_count())
            .map(|e| edge_group(weight, e))
            .collect(),
        vertex_tags: triples.iter().map(|&t| vertex_group(weight, t)).collect(),
        sides: graph.edges().to_vec(),
        triples,
    };
    assert!(
        pres.satisfies_inclusions(),
        "stabilizer inclusions fail for an admissible weight: {pres:?}"
    );
    pres
}

// Primitive Pythagorean triples (cos, sin, hypotenuse) used for base points.
const TRIPLES: [(i64, i64, i64); 16] = [
    (3, 4, 5),
    (5, 12, 13),
    (8, 15, 17),
    (7, 24, 25),
    (20, 21, 29),
    (12, 35, 37),
    (9, 40, 41),
    (28, 45, 53),
    (11, 60, 61),
    (33, 56, 65),
    (16, 63, 65),
    (48, 55, 73),
    (13, 84, 85),
    (36, 77, 85),
    (39, 80, 89),
    (65, 72, 97),
];

type Mat3 = [[i64; 3]; 3];

fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|l| a[i][l] * b[l][j]).sum();
        }
    }
    out
}

/// `scale * R` for a rational rotation `R = Rz Rx Rz`, with `scale` the
/// product of the three hypotenuses.
fn scaled_rotation(index: usize) -> (Mat3, i64) {
    let pick = |i: usize| TRIPLES[i % TRIPLES.len()];
    let (p1, q1, r1) = pick(index);
    let (p2, q2, r2) = pick(index + 5);
    let (p3, q3, r3) = pick(index + 11);
    let z1 = [[p1, -q1, 0], [q1, p1, 0], [0, 0, r1]];
    let x2 = [[r2, 0, 0], [0, p2, -q2], [0, q2, p2]];
    let z3 = [[p3, -q3, 0], [q3, p3, 0], [0, 0, r3]];
    (mul3(&mul3(&z1, &x2), &z3), r1 * r2 * r3)
}

/// Lie algebra coordinates spanned by a tag: `e3` for the circle.
fn basis(tag: GroupTag) -> &'static [usize] {
    match tag {
        GroupTag::Z2 => &[],
        GroupTag::U1 => &[2],
        GroupTag::SU2 => &[0, 1, 2],
    }
}

fn linearized_action(pres: &FiberPresentation, seed: usize) -> Vec<Vec<BigInt>> {
    let mut col_of = Vec::with_capacity(pres.vertex_tags.len());
    let mut cols = 0;
    for &t in &pres.vertex_tags {
        col_of.push(cols);
        cols += t.dimension();
    }
    let mut rows = Vec::new();
    for (e, (&tag, &(left, right))) in pres.edge_tags.iter().zip(&pres.sides).enumerate() {
        // every circle factor sits on the e3 axis; circle base points commute
        // with it, so only SU(2) factors need a rotation
        let (rot, scale) = match tag {
            GroupTag::SU2 => scaled_rotation(seed * 7 + e),
            _ => ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
        };
        for &out in basis(tag) {
            let mut row = vec![0i64; cols];
            for (k, &inn) in basis(pres.vertex_tags[left]).iter().enumerate() {
                row[col_of[left] + k] += if inn == out { scale } else { 0 };
            }
            for (k, &inn) in basis(pres.vertex_tags[right]).iter().enumerate() {
                row[col_of[right] + k] -= rot[out][inn];
            }
            rows.push(row.into_iter().map(BigInt::from).collect());
        }
    }
    rows
}

/// Dimension of `prod e_w(C) / prod v_w(P)`: the edge group dimension minus
/// the generic rank of the infinitesimal twisting action. The generic rank is
/// the largest rank seen over a few rational base points.
pub fn fiber_dimension(pres: &FiberPresentation) -> usize {
    let total: usize = pres.edge_tags.iter().map(|t| t.dimension()).sum();
    let generic = (0..3)
        .map(|seed| rank(&linearized_action(pres, seed)))
        .max()
        .unwrap_or(0);
    total - generic
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1 {
    pub free_rank: usize,
    pub two_torsion_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiberInvariants {
    pub dimension: usize,
    pub t: Option<usize>,
    pub p: Option<usize>,
    pub s: Option<usize>,
    pub h1: Option<H1>,
    pub status: Status,
}

/// Exact for the torus stratum (all edges circles, vertices centre or
/// circle); `Partial` with the dimension alone otherwise.
pub fn fiber_invariants(pres: &FiberPresentation) -> FiberInvariants {
    let dimension = fiber_dimension(pres);
    let torus = pres.edge_tags.iter().all(|&t| t == GroupTag::U1)
        && pres.vertex_tags.iter().all(|&t| t != GroupTag::SU2);
    if !torus {
        return FiberInvariants {
            dimension,
            t: None,
            p: None,
            s: None,
            h1: None,
            status: Status::Partial,
        };
    }
    let circles: Vec<VertexId> = (0..pres.vertex_tags.len())
        .filter(|&v| pres.vertex_tags[v] == GroupTag::U1)
        .collect();
    let incidence: Vec<Vec<i64>> = pres
        .sides
        .iter()
        .map(|&(l, r)| {
            circles
                .iter()
                .map(|&v| (v == l) as i64 - (v == r) as i64)
                .collect()
        })
        .collect();
    let coker = cokernel(&incidence, pres.edge_tags.len());
    let t = coker.free_rank;
    FiberInvariants {
        dimension,
        t: Some(t),
        p: Some(0),
        s: Some(0),
        h1: Some(H1 {
            free_rank: t,
            two_torsion_rank: 0,
        }),
        status: Status::Exact,
    }
}

/// One classified weight, as emitted by the batch front-end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberRecord {
    pub labels: Vec<u32>,
    pub edge_tags: Vec<GroupTag>,
    pub vertex_tags: Vec<GroupTag>,
    pub dimension: usize,
    pub status: Status,
    pub t: Option<usize>,
    pub p: Option<usize>,
    pub s: Option<usize>,
    pub h1: Option<H1>,
}

pub fn classify(graph: &TrivalentGraph, weight: &WeightVector) -> FiberRecord {
    let pres = fiber_presentation(graph, weight);
    let inv = fiber_invariants(&pres);
    FiberRecord {
        labels: pres.labels,
        edge_tags: pres.edge_tags,
        vertex_tags: pres.vertex_tags,
        dimension: inv.dimension,
        status: inv.status,
        t: inv.t,
        p: inv.p,
        s: inv.s,
        h1: inv.h1,
    }
}
