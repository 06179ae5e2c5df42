//! The Verlinde number, computed from the trigonometric formula and from
//! exact fusion contraction, and reconciled with direct enumeration.
//!
//! Level convention: "level `k`" always means weights with labels in
//! `0..=k`, matched against the trigonometric sum with denominator `k + 2`.

mod contraction;
mod formula;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{enumerate_trivalent_graphs, CanonicalCertificate, TrivalentGraph};
use crate::weights::{enumerate_weights, label_space_size};

pub use contraction::{
    elimination_order, fusion_count_contraction, fusion_count_with, ContractionOptions,
    DEFAULT_MAX_ENTRIES,
};
pub use formula::{
    verlinde_rank, verlinde_rank_with_precision, RoundedValue, DEFAULT_PRECISION_BITS,
};

/// Largest unrestricted label space that [`verify_rank_identity`] will walk
/// by enumeration.
pub const ENUMERATION_LABEL_SPACE_LIMIT: u128 = 1_000_000;

/// Reconciliation of the three counting routes for one genus and level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub genus: u32,
    pub level: u32,
    pub graph: Option<CanonicalCertificate>,
    pub count_enumeration: Option<u128>,
    pub count_contraction: u128,
    pub count_formula: u128,
    pub formula_radius: f64,
    pub agreement: bool,
}

impl CountReport {
    fn settle(mut self) -> Self {
        self.agreement = self.count_contraction == self.count_formula
            && self
                .count_enumeration
                .is_none_or(|e| e == self.count_contraction)
            && self.formula_radius < 0.5;
        self
    }
}

fn enumeration_feasible(graph: &TrivalentGraph, level: u32) -> bool {
    label_space_size(graph, level) <= ENUMERATION_LABEL_SPACE_LIMIT
}

/// Counts for a single graph.
pub fn count_report(graph: &TrivalentGraph, level: u32) -> Result<CountReport> {
    let formula = verlinde_rank(graph.genus(), level)?;
    let contraction = fusion_count_contraction(graph, level)?;
    let enumeration = if enumeration_feasible(graph, level) {
        Some(enumerate_weights(graph, level, ENUMERATION_LABEL_SPACE_LIMIT)?.len() as u128)
    } else {
        None
    };
    Ok(CountReport {
        genus: graph.genus(),
        level,
        graph: Some(graph.certificate()),
        count_enumeration: enumeration,
        count_contraction: contraction,
        count_formula: formula.value,
        formula_radius: formula.radius,
        agreement: false,
    }
    .settle())
}

/// Runs the formula once and contraction (plus enumeration when the label
/// space is small) on every isomorphism class of genus `genus`. The report
/// carries no certificate; it agrees only if every class gave the same count
/// and that count matches the formula.
pub fn verify_rank_identity(genus: u32, level: u32) -> Result<CountReport> {
    if level == 0 {
        return Err(Error::LevelZero);
    }
    let graphs = enumerate_trivalent_graphs(genus)?;
    let formula = verlinde_rank(genus, level)?;
    let mut contraction = Vec::with_capacity(graphs.len());
    let mut enumeration = Vec::new();
    for g in &graphs {
        contraction.push(fusion_count_contraction(g, level)?);
        if enumeration_feasible(g, level) {
            enumeration
                .push(enumerate_weights(g, level, ENUMERATION_LABEL_SPACE_LIMIT)?.len() as u128);
        }
    }
    let uniform = |xs: &[u128]| xs.windows(2).all(|w| w[0] == w[1]);
    let report = CountReport {
        genus,
        level,
        graph: None,
        count_enumeration: enumeration.first().copied(),
        count_contraction: contraction[0],
        count_formula: formula.value,
        formula_radius: formula.radius,
        agreement: false,
    }
    .settle();
    Ok(CountReport {
        agreement: report.agreement
            && uniform(&contraction)
            && uniform(&enumeration)
            && (enumeration.is_empty() || enumeration.len() == graphs.len()),
        ..report
    })
}
