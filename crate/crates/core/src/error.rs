use thiserror::Error;

use crate::system::BalanceCondition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unit set is empty")]
    EmptySet,
    #[error("unit index {index} is outside 1..={n}")]
    OutOfRange { index: i64, n: usize },
    #[error("unit index {0} appears more than once")]
    Duplicate(usize),
    #[error("invalid system configuration n={n}, k={k}: {reason}")]
    InvalidConfig { n: usize, k: usize, reason: &'static str },
    #[error("reverse-tuple position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("progression step {0} is a multiple of 2*pi")]
    DegenerateStep(f64),
    #[error("term count must be positive")]
    EmptyProgression,
    #[error("n={n} exceeds the enumeration bound of {limit} units")]
    TooLarge { n: usize, limit: usize },
    #[error("state vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("unit reliability must lie in [0, 1], got {0}")]
    InvalidUnitReliability(f64),
    #[error("row n={n}, k={k}, condition={condition}: {source}")]
    Row {
        n: usize,
        k: usize,
        condition: BalanceCondition,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Errors raised by the enumeration bound rather than by bad input.
    pub fn is_computation(&self) -> bool {
        match self {
            Error::TooLarge { .. } => true,
            Error::Row { source, .. } => source.is_computation(),
            _ => false,
        }
    }
}
