//! System reliability from a minimum tie-set catalog.
//!
//! Two routes are provided. [`reliability_product`] is the closed product
//! form `1 - prod(1 - r^|T|)` over the catalog, which treats the tie-sets as
//! if they failed independently. [`reliability_exact`] sums the structure
//! function over all `2^n` unit states. The two agree when the tie-sets are
//! pairwise disjoint; otherwise the product form is an upper bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::{BalanceCondition, SystemConfig, UnitSet, DEFAULT_ENUMERATION_LIMIT};
use crate::tiesets::{enumerate_minimum_tiesets_bounded, TieSetCatalog};

/// Binary unit states, `true` meaning the unit functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector(Vec<bool>);

impl StateVector {
    pub fn new(states: Vec<bool>) -> Self {
        StateVector(states)
    }

    /// Indicator vector of `units` over its ambient system.
    pub fn indicator(units: &UnitSet) -> Self {
        StateVector((1..=units.n()).map(|u| units.contains(u)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &up)| up)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

fn works(state: u64, masks: &[u64]) -> bool {
    masks.iter().any(|&t| t & !state == 0)
}

/// `phi(X) = 1` iff every unit of some minimum tie-set is up.
pub fn structure_function(state: &StateVector, catalog: &TieSetCatalog) -> Result<bool> {
    if state.len() != catalog.n() {
        return Err(Error::LengthMismatch { got: state.len(), expected: catalog.n() });
    }
    Ok(works(state.mask(), &catalog.masks()))
}

fn check_unit_reliability(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidUnitReliability(r))
    }
}

pub fn reliability_product(catalog: &TieSetCatalog, r: f64) -> Result<f64> {
    check_unit_reliability(r)?;
    let miss: f64 = catalog
        .tiesets()
        .iter()
        .map(|t| 1.0 - r.powi(t.len() as i32))
        .product();
    Ok(1.0 - miss)
}

/// Number of working states grouped by how many units are up.
///
/// Computed once per catalog by walking every state; evaluating it at a
/// given `r` is then a polynomial in `r` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorkingStateProfile {
    n: usize,
    counts: Vec<u64>,
}

impl WorkingStateProfile {
    pub fn new(catalog: &TieSetCatalog) -> Result<Self> {
        Self::bounded(catalog, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn bounded(catalog: &TieSetCatalog, limit: usize) -> Result<Self> {
        let n = catalog.n();
        if n > limit {
            return Err(Error::TooLarge { n, limit });
        }
        let masks = catalog.masks();
        const CHUNK: u64 = 1 << 12;
        let total = 1u64 << n;
        let counts = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|chunk| {
                let mut local = vec![0u64; n + 1];
                let end = ((chunk + 1) * CHUNK).min(total);
                for state in chunk * CHUNK..end {
                    if works(state, &masks) {
                        local[state.count_ones() as usize] += 1;
                    }
                }
                local
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(Self { n, counts })
    }

    /// `counts()[b]` is the number of working states with exactly `b` units up.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn reliability(&self, r: f64) -> Result<f64> {
        check_unit_reliability(r)?;
        let q = 1.0 - r;
        let total = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(up, &c)| c as f64 * r.powi(up as i32) * q.powi((self.n - up) as i32))
            .sum::<f64>();
        Ok(total.clamp(0.0, 1.0))
    }
}

pub fn reliability_exact(catalog: &TieSetCatalog, r: f64) -> Result<f64> {
    check_unit_reliability(r)?;
    WorkingStateProfile::new(catalog)?.reliability(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityRow {
    pub n: usize,
    pub k: usize,
    pub condition: BalanceCondition,
    pub r: f64,
    #[serde(rename = "R_product")]
    pub r_product: f64,
    #[serde(rename = "R_exact")]
    pub r_exact: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReliabilityTable {
    pub rows: Vec<ReliabilityRow>,
}

impl ReliabilityTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Sweep options beyond the grid itself.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub exact: bool,
    pub tol: f64,
    pub limit: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { exact: false, tol: crate::balance::DEFAULT_TOLERANCE, limit: DEFAULT_ENUMERATION_LIMIT }
    }
}

struct Prepared {
    catalog: TieSetCatalog,
    profile: Option<WorkingStateProfile>,
}

/// One row per `(config, condition, r)` in input order. Each catalog is
/// enumerated once and reused for every grid point.
pub fn sweep(
    configs: &[SystemConfig],
    conditions: &[BalanceCondition],
    r_grid: &[f64],
    options: SweepOptions,
) -> Result<ReliabilityTable> {
    for &r in r_grid {
        check_unit_reliability(r)?;
    }
    let pairs: Vec<(SystemConfig, BalanceCondition)> = configs
        .iter()
        .flat_map(|&c| conditions.iter().map(move |&b| (c, b)))
        .collect();
    if r_grid.is_empty() {
        return Ok(ReliabilityTable::default());
    }
    let prepared: Vec<Prepared> = pairs
        .par_iter()
        .map(|&(config, condition)| {
            let wrap = |e: Error| Error::Row { n: config.n(), k: config.k(), condition, source: Box::new(e) };
            let catalog = enumerate_minimum_tiesets_bounded(config, condition, options.tol, options.limit).map_err(wrap)?;
            let profile = if options.exact {
                Some(WorkingStateProfile::bounded(&catalog, options.limit).map_err(wrap)?)
            } else {
                None
            };
            Ok(Prepared { catalog, profile })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(prepared.len() * r_grid.len());
    for p in &prepared {
        for &r in r_grid {
            rows.push(ReliabilityRow {
                n: p.catalog.n(),
                k: p.catalog.k(),
                condition: p.catalog.condition(),
                r,
                r_product: reliability_product(&p.catalog, r)?,
                r_exact: p.profile.as_ref().map(|w| w.reliability(r)).transpose()?,
            });
        }
    }
    Ok(ReliabilityTable { rows })
}

/// Minimum tie-set counts under each condition for one `(k, n)` system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub k: usize,
    pub n: usize,
    pub bc1: usize,
    pub bc2: usize,
    pub bc3: usize,
}

impl CountRow {
    pub fn diff21(&self) -> i64 {
        self.bc2 as i64 - self.bc1 as i64
    }

    pub fn diff32(&self) -> i64 {
        self.bc3 as i64 - self.bc2 as i64
    }
}

/// System sizes of the reference count table.
pub const TABLE1_N: [usize; 5] = [6, 8, 10, 12, 14];
/// Values of `k` of the reference count table; only `k < n` is tabulated.
pub const TABLE1_K: [usize; 6] = [2, 4, 6, 8, 10, 12];

/// Counts for every `(k, n)` with `k < n`, ordered by `n` then `k`.
pub fn table1_counts(n_list: &[usize], k_list: &[usize], tol: f64) -> Result<Vec<CountRow>> {
    let mut systems = Vec::new();
    for &n in n_list {
        for &k in k_list {
            if k < n {
                systems.push(SystemConfig::new(n, k)?);
            }
        }
    }
    systems
        .par_iter()
        .map(|&config| {
            let count = |c: BalanceCondition| {
                crate::tiesets::enumerate_minimum_tiesets(config, c, tol)
                    .map(|cat| cat.len())
                    .map_err(|e| Error::Row { n: config.n(), k: config.k(), condition: c, source: Box::new(e) })
            };
            Ok(CountRow {
                k: config.k(),
                n: config.n(),
                bc1: count(BalanceCondition::Bc1)?,
                bc2: count(BalanceCondition::Bc2)?,
                bc3: count(BalanceCondition::Bc3)?,
            })
        })
        .collect()
}
