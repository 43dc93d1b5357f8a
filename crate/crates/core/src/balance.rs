//! Balance predicates for an operating-unit set.
//!
//! BC1 and BC2 are both read off the number of positions `l` at which the
//! reverse tuple `E^(l)` of the gap sequence equals the gap sequence itself:
//! BC1 needs a nonzero even count, BC2 a count above one. BC3 places unit `i`
//! at angle `(i - 1) * 2pi / n` on the unit circle and asks for the mean
//! position to sit at the origin.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::{BalanceCondition, DistanceTuple, UnitSet};

/// Default BC3 threshold on the center-of-gravity norm.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryProfile {
    pub axis_count: usize,
    /// 1-based positions `l` with `E^(l) = D_U`.
    pub matching_positions: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterOfGravity {
    pub x: f64,
    pub y: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub axis_count: usize,
    pub cog: CenterOfGravity,
    pub bc1: bool,
    pub bc2: bool,
    pub bc3: bool,
}

impl BalanceReport {
    pub fn satisfies(&self, condition: BalanceCondition) -> bool {
        match condition {
            BalanceCondition::Bc1 => self.bc1,
            BalanceCondition::Bc2 => self.bc2,
            BalanceCondition::Bc3 => self.bc3,
        }
    }
}

/// `E^(l) = (d_l, d_{l-1}, ..., d_1, d_|U|, ..., d_{l+1})`.
pub fn reverse_tuple(d: &DistanceTuple, l: usize) -> Result<DistanceTuple> {
    let m = d.len();
    if l < 1 || l > m {
        return Err(Error::PositionOutOfRange { position: l, len: m });
    }
    let gaps = d.gaps();
    let reversed = (0..m).map(|j| gaps[(l + m - 1 - j) % m]).collect();
    Ok(DistanceTuple::from_gaps(reversed))
}

fn reverse_matches(gaps: &[usize], l: usize) -> bool {
    let m = gaps.len();
    (0..m).all(|j| gaps[(l + m - 1 - j) % m] == gaps[j])
}

pub fn count_symmetry_axes(units: &UnitSet) -> SymmetryProfile {
    let d = units.distance_tuple();
    let matching_positions: Vec<usize> =
        (1..=d.len()).filter(|&l| reverse_matches(d.gaps(), l)).collect();
    SymmetryProfile { axis_count: matching_positions.len(), matching_positions }
}

pub fn check_bc1(units: &UnitSet) -> bool {
    let axes = count_symmetry_axes(units).axis_count;
    axes > 0 && axes.is_multiple_of(2)
}

pub fn check_bc2(units: &UnitSet) -> bool {
    count_symmetry_axes(units).axis_count > 1
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

pub fn center_of_gravity(units: &UnitSet) -> CenterOfGravity {
    let theta = TAU / units.n() as f64;
    let mut xs = CompensatedSum::default();
    let mut ys = CompensatedSum::default();
    for u in units.iter() {
        let angle = (u - 1) as f64 * theta;
        xs.add(angle.cos());
        ys.add(angle.sin());
    }
    let count = units.len() as f64;
    let x = xs.total() / count;
    let y = ys.total() / count;
    CenterOfGravity { x, y, norm: x.hypot(y) }
}

fn validate_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

pub fn check_bc3(units: &UnitSet, tol: f64) -> Result<bool> {
    validate_tolerance(tol)?;
    Ok(center_of_gravity(units).norm <= tol)
}

/// Evaluates all three conditions independently.
pub fn classify(units: &UnitSet, tol: f64) -> Result<BalanceReport> {
    validate_tolerance(tol)?;
    let axis_count = count_symmetry_axes(units).axis_count;
    let cog = center_of_gravity(units);
    Ok(BalanceReport {
        axis_count,
        cog,
        bc1: axis_count > 0 && axis_count.is_multiple_of(2),
        bc2: axis_count > 1,
        bc3: cog.norm <= tol,
    })
}

/// Single-condition check used by the enumerator.
pub fn satisfies(units: &UnitSet, condition: BalanceCondition, tol: f64) -> Result<bool> {
    match condition {
        BalanceCondition::Bc1 => Ok(check_bc1(units)),
        BalanceCondition::Bc2 => Ok(check_bc2(units)),
        BalanceCondition::Bc3 => check_bc3(units, tol),
    }
}

/// Closed form for `sum_{j<m} cos(a + j d)` and `sum_{j<m} sin(a + j d)`:
/// both share the factor `sin(m d / 2) / sin(d / 2)` and the phase
/// `a + (m - 1) d / 2`.
pub fn trig_progression_sum(a: f64, d: f64, m: u64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::EmptyProgression);
    }
    let half = (d / 2.0).sin();
    // sin(d/2) for d = 2*pi*j comes out near 1e-16 in floating point.
    let turns = d / TAU;
    if d == 0.0 || (turns - turns.round()).abs() < 1e-12 {
        return Err(Error::DegenerateStep(d));
    }
    let amplitude = (m as f64 * d / 2.0).sin() / half;
    let phase = a + (m as f64 - 1.0) * d / 2.0;
    Ok((amplitude * phase.cos(), amplitude * phase.sin()))
}
