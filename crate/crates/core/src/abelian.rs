//! Counts for the Abelian model: torsion points of the Jacobian and their
//! images in the Kummer variety.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::gamma0;
use crate::weights::abelian_filter;

/// Default cap on the number of torsion points walked by brute force.
pub const DEFAULT_POINT_BUDGET: u128 = 10_000_000;

/// The `m`-torsion `(Z_m)^g` with the involution `x -> -x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbelianModel {
    pub genus: u32,
    pub modulus: u32,
}

impl AbelianModel {
    /// The `2k`-torsion, which carries the level `k` Kummer count.
    pub fn at_level(genus: u32, level: u32) -> Self {
        AbelianModel {
            genus,
            modulus: 2 * level,
        }
    }

    pub fn point_count(&self) -> u128 {
        (self.modulus as u128).pow(self.genus)
    }

    pub fn negate(&self, x: &[u32]) -> Vec<u32> {
        x.iter()
            .map(|&c| (self.modulus - c) % self.modulus)
            .collect()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let m = self.modulus as u128;
        let g = self.genus as usize;
        (0..self.point_count()).map(move |mut i| {
            let mut x = vec![0u32; g];
            for c in x.iter_mut().rev() {
                *c = (i % m) as u32;
                i /= m;
            }
            x
        })
    }
}

pub fn theta_rank(genus: u32, level: u32) -> u128 {
    (level as u128).pow(genus)
}

pub fn kummer_even_rank(genus: u32, level: u32) -> u128 {
    (1u128 << (genus - 1)) * ((level as u128).pow(genus) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub orbits: u128,
    pub fixed_points: u128,
    pub free_orbits: u128,
}

/// Orbits of negation on `(Z_2k)^g`, counted point by point.
pub fn orbit_census(genus: u32, level: u32, budget: u128) -> Result<OrbitCensus> {
    if level == 0 {
        return Err(Error::LevelZero);
    }
    let model = AbelianModel::at_level(genus, level);
    if model.point_count() > budget {
        return Err(Error::Budget { cap: budget });
    }
    let (mut fixed, mut paired) = (0u128, 0u128);
    for x in model.points() {
        let y = model.negate(&x);
        if x == y {
            fixed += 1;
        } else if x < y {
            paired += 1;
        }
    }
    Ok(OrbitCensus {
        orbits: fixed + paired,
        fixed_points: fixed,
        free_orbits: paired,
    })
}

pub fn kummer_orbit_bruteforce(genus: u32, level: u32) -> Result<u128> {
    Ok(orbit_census(genus, level, DEFAULT_POINT_BUDGET)?.orbits)
}

/// Free orbits `((2k)^g - 2^g)/2` plus the `2^g` fixed points add up to the
/// even theta rank, and brute force sees exactly those two summands.
pub fn decomposition_check(genus: u32, level: u32) -> Result<bool> {
    let census = orbit_census(genus, level, DEFAULT_POINT_BUDGET)?;
    let points = AbelianModel::at_level(genus, level).point_count();
    let two_torsion = 1u128 << genus;
    let free = (points - two_torsion) / 2;
    Ok(free + two_torsion == kummer_even_rank(genus, level)
        && census.free_orbits == free
        && census.fixed_points == two_torsion)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianRow {
    pub g: u32,
    pub k: u32,
    pub theta_rank: u128,
    pub kummer_rank: u128,
    pub orbit_count: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn abelian_row(genus: u32, level: u32) -> Result<AbelianRow> {
    let kummer_rank = kummer_even_rank(genus, level);
    let orbit_count = kummer_orbit_bruteforce(genus, level)?;
    Ok(AbelianRow {
        g: genus,
        k: level,
        theta_rank: theta_rank(genus, level),
        kummer_rank,
        orbit_count,
        matches: orbit_count == kummer_rank && decomposition_check(genus, level)?,
    })
}

/// Abelian weights on the chain graph at level `k` set beside the Kummer
/// count at the same parameter. The two are not expected to coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma0Comparison {
    pub genus: u32,
    pub level: u32,
    pub abelian_weights: u128,
    pub non_abelian_weights: u128,
    pub kummer_rank: u128,
    pub equal: bool,
}

pub fn gamma0_comparison(genus: u32, level: u32, max_count: u128) -> Result<Gamma0Comparison> {
    let graph = gamma0(genus)?;
    let split = abelian_filter(&graph, level, max_count)?;
    let abelian_weights = split.abelian.len() as u128;
    let kummer_rank = kummer_even_rank(genus, level);
    Ok(Gamma0Comparison {
        genus,
        level,
        abelian_weights,
        non_abelian_weights: split.non_abelian.len() as u128,
        kummer_rank,
        equal: abelian_weights == kummer_rank,
    })
}
