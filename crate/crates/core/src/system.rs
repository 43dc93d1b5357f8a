//! Domain types shared by every other module: the `(n, k)` system
//! configuration, operating-unit sets, their circular gap sequences and the
//! balance-condition tag.
//!
//! Unit indices are 1-based at every public boundary. Internally a
//! [`UnitSet`] is an `n`-bit mask where bit `i` stands for unit `i + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest system a [`UnitSet`] can describe (mask width).
pub const MAX_UNITS: usize = 64;

/// Default bound on `n` for anything that walks all `2^n` subsets or states.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// A circular k-out-of-n:G system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemConfig {
    n: usize,
    k: usize,
}

impl SystemConfig {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidConfig { n, k, reason: "n must be at least 3" });
        }
        if n > MAX_UNITS {
            return Err(Error::InvalidConfig { n, k, reason: "n exceeds 64 units" });
        }
        if k < 1 || k > n {
            return Err(Error::InvalidConfig { n, k, reason: "k must lie in 1..=n" });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for SystemConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-out-of-{}", self.k, self.n)
    }
}

/// The three balance conditions: symmetry (BC1), proportional spread (BC2)
/// and center of gravity at the origin (BC3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BalanceCondition {
    #[serde(rename = "BC1")]
    Bc1,
    #[serde(rename = "BC2")]
    Bc2,
    #[serde(rename = "BC3")]
    Bc3,
}

impl BalanceCondition {
    pub const ALL: [BalanceCondition; 3] =
        [BalanceCondition::Bc1, BalanceCondition::Bc2, BalanceCondition::Bc3];

    pub fn as_str(&self) -> &'static str {
        match self {
            BalanceCondition::Bc1 => "BC1",
            BalanceCondition::Bc2 => "BC2",
            BalanceCondition::Bc3 => "BC3",
        }
    }
}

impl fmt::Display for BalanceCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BalanceCondition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bc1" => Ok(BalanceCondition::Bc1),
            "bc2" => Ok(BalanceCondition::Bc2),
            "bc3" => Ok(BalanceCondition::Bc3),
            other => Err(format!("unknown balance condition '{other}'")),
        }
    }
}

/// A nonempty set of operating units on a circle of `n` units.
///
/// Ordering is canonical catalog order: cardinality first, then
/// lexicographic on the ascending index list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitSet {
    n: usize,
    mask: u64,
}

impl UnitSet {
    /// Validates and normalizes a list of 1-based indices.
    pub fn new(indices: &[i64], n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySet);
        }
        if n == 0 || n > MAX_UNITS {
            return Err(Error::InvalidConfig { n, k: 0, reason: "n must lie in 1..=64" });
        }
        let mut mask = 0u64;
        for &index in indices {
            if index < 1 || index as u64 > n as u64 {
                return Err(Error::OutOfRange { index, n });
            }
            let bit = 1u64 << (index - 1);
            if mask & bit != 0 {
                return Err(Error::Duplicate(index as usize));
            }
            mask |= bit;
        }
        Ok(Self { n, mask })
    }

    /// Builds a set from a bit mask (bit `i` is unit `i + 1`).
    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_UNITS {
            return Err(Error::InvalidConfig { n, k: 0, reason: "n must lie in 1..=64" });
        }
        if mask == 0 {
            return Err(Error::EmptySet);
        }
        if n < 64 && mask >> n != 0 {
            let index = 64 - mask.leading_zeros() as i64;
            return Err(Error::OutOfRange { index, n });
        }
        Ok(Self { n, mask })
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_mask(full_mask(n), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, unit: usize) -> bool {
        unit >= 1 && unit <= self.n && self.mask >> (unit - 1) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &UnitSet) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// Ascending 1-based indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.n).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
    }

    pub fn units(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Circular gaps `d_l = u_{l+1} - u_l`, closed by `d_|U| = n + u_1 - u_|U|`.
    pub fn distance_tuple(&self) -> DistanceTuple {
        let units = self.units();
        let mut gaps: Vec<usize> = units.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.push(self.n + units[0] - units[units.len() - 1]);
        DistanceTuple(gaps)
    }

    /// Relabels every unit `u` as `u + offset` around the circle.
    pub fn rotate(&self, offset: usize) -> UnitSet {
        let c = (offset % self.n) as u32;
        let full = full_mask(self.n);
        let mask = if c == 0 {
            self.mask
        } else {
            ((self.mask << c) | (self.mask >> (self.n as u32 - c))) & full
        };
        UnitSet { n: self.n, mask }
    }

    /// Mirror image `u -> n + 2 - u` (unit 1 stays fixed).
    pub fn reflect(&self) -> UnitSet {
        let mut mask = 0u64;
        for u in self.iter() {
            let image = if u == 1 { 1 } else { self.n + 2 - u };
            mask |= 1 << (image - 1);
        }
        UnitSet { n: self.n, mask }
    }
}

impl Ord for UnitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for UnitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UnitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, u) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for UnitSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Circular gap sequence of a [`UnitSet`]; sums to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceTuple(Vec<usize>);

impl DistanceTuple {
    pub fn gaps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub(crate) fn from_gaps(gaps: Vec<usize>) -> Self {
        DistanceTuple(gaps)
    }
}

impl From<DistanceTuple> for Vec<usize> {
    fn from(d: DistanceTuple) -> Self {
        d.0
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Validates a unit list and returns it as a [`UnitSet`].
pub fn make_unit_set(indices: &[i64], n: usize) -> Result<UnitSet> {
    UnitSet::new(indices, n)
}

pub fn distance_tuple(units: &UnitSet) -> DistanceTuple {
    units.distance_tuple()
}
