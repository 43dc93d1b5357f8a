//! Minimum tie-set enumeration.
//!
//! Candidates are visited in order of increasing cardinality starting at
//! `k`. A candidate that contains an already accepted minimum tie-set is
//! dropped before its balance is even checked, so everything accepted is
//! minimal by construction. Sets of equal size cannot contain one another,
//! which lets each cardinality level be checked in parallel.

use rayon::prelude::*;
use serde::Serialize;

use crate::balance;
use crate::error::{Error, Result};
use crate::system::{BalanceCondition, SystemConfig, UnitSet, DEFAULT_ENUMERATION_LIMIT};

/// All minimum tie-sets of one `(n, k, condition)` system, in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TieSetCatalog {
    config: SystemConfig,
    condition: BalanceCondition,
    tol: f64,
    tiesets: Vec<UnitSet>,
}

impl TieSetCatalog {
    /// Assembles a catalog from externally supplied sets, re-checking every
    /// invariant (cardinality, balance, antichain, distinctness).
    pub fn from_parts(
        config: SystemConfig,
        condition: BalanceCondition,
        tol: f64,
        mut tiesets: Vec<UnitSet>,
    ) -> Result<Self> {
        tiesets.sort();
        let invalid = |reason: &'static str| Error::InvalidConfig { n: config.n(), k: config.k(), reason };
        for (i, t) in tiesets.iter().enumerate() {
            if t.n() != config.n() {
                return Err(invalid("tie-set drawn from a different system size"));
            }
            if t.len() < config.k() {
                return Err(invalid("tie-set smaller than k"));
            }
            if !balance::satisfies(t, condition, tol)? {
                return Err(invalid("tie-set fails the balance condition"));
            }
            if tiesets[..i].iter().any(|s| s.is_subset_of(t)) {
                return Err(invalid("tie-sets are not an antichain"));
            }
        }
        Ok(Self { config, condition, tol, tiesets })
    }

    pub fn config(&self) -> SystemConfig {
        self.config
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }

    pub fn k(&self) -> usize {
        self.config.k()
    }

    pub fn condition(&self) -> BalanceCondition {
        self.condition
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn tiesets(&self) -> &[UnitSet] {
        &self.tiesets
    }

    pub fn len(&self) -> usize {
        self.tiesets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiesets.is_empty()
    }

    /// Cardinality of each member, in catalog order.
    pub fn sizes(&self) -> Vec<usize> {
        self.tiesets.iter().map(UnitSet::len).collect()
    }

    pub(crate) fn masks(&self) -> Vec<u64> {
        self.tiesets.iter().map(UnitSet::mask).collect()
    }
}

fn check_bound(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Every mask over `n` bits with exactly `size` bits set, ascending.
fn masks_of_size(n: usize, size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if size == 0 || size > n {
        return out;
    }
    let end = 1u128 << n;
    let mut mask: u64 = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    loop {
        out.push(mask);
        // Gosper's hack: next integer with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask as u128 + c as u128;
        if r >= end {
            break;
        }
        let r = r as u64;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

fn level_filter(
    n: usize,
    size: usize,
    condition: BalanceCondition,
    tol: f64,
    accepted: &[u64],
) -> Result<Vec<UnitSet>> {
    masks_of_size(n, size)
        .into_par_iter()
        .filter(|&m| !accepted.iter().any(|&a| a & !m == 0))
        .map(|m| {
            let u = UnitSet::from_mask(m, n)?;
            Ok(balance::satisfies(&u, condition, tol)?.then_some(u))
        })
        .filter_map(Result::transpose)
        .collect()
}

/// All subsets with at least `k` units that satisfy `condition`, in
/// canonical order.
pub fn enumerate_tiesets(config: SystemConfig, condition: BalanceCondition, tol: f64) -> Result<Vec<UnitSet>> {
    enumerate_tiesets_bounded(config, condition, tol, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_tiesets_bounded(
    config: SystemConfig,
    condition: BalanceCondition,
    tol: f64,
    limit: usize,
) -> Result<Vec<UnitSet>> {
    check_bound(config.n(), limit)?;
    let mut out = Vec::new();
    for size in config.k()..=config.n() {
        let mut level = level_filter(config.n(), size, condition, tol, &[])?;
        level.sort();
        out.append(&mut level);
    }
    Ok(out)
}

/// Keeps the inclusion-minimal members of `sets`.
pub fn minimal_filter(sets: &[UnitSet]) -> Vec<UnitSet> {
    let mut sorted: Vec<UnitSet> = sets.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut kept: Vec<UnitSet> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|t| t.is_subset_of(&s)) {
            kept.push(s);
        }
    }
    kept
}

pub fn enumerate_minimum_tiesets(
    config: SystemConfig,
    condition: BalanceCondition,
    tol: f64,
) -> Result<TieSetCatalog> {
    enumerate_minimum_tiesets_bounded(config, condition, tol, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_minimum_tiesets_bounded(
    config: SystemConfig,
    condition: BalanceCondition,
    tol: f64,
    limit: usize,
) -> Result<TieSetCatalog> {
    check_bound(config.n(), limit)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut tiesets: Vec<UnitSet> = Vec::new();
    let mut accepted: Vec<u64> = Vec::new();
    for size in config.k()..=config.n() {
        let mut level = level_filter(config.n(), size, condition, tol, &accepted)?;
        level.sort();
        accepted.extend(level.iter().map(UnitSet::mask));
        tiesets.append(&mut level);
    }
    Ok(TieSetCatalog { config, condition, tol, tiesets })
}
