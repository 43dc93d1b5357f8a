//! Balance conditions, minimum tie-set enumeration and reliability
//! evaluation for circular k-out-of-n:G balanced systems.
//!
//! A system has `n` identical units evenly spaced on a circle. It works when
//! at least `k` units function and the functioning set is balanced under a
//! chosen condition:
//!
//! * BC1, symmetry about at least one pair of perpendicular axes,
//! * BC2, operating units spread proportionally around the circle,
//! * BC3, center of gravity of the operating units at the origin.
//!
//! ```
//! use circular_balance::{enumerate_minimum_tiesets, reliability_product, BalanceCondition, SystemConfig};
//!
//! let config = SystemConfig::new(12, 4).unwrap();
//! let catalog = enumerate_minimum_tiesets(config, BalanceCondition::Bc3, 1e-9).unwrap();
//! assert_eq!(catalog.len(), 31);
//! let r = reliability_product(&catalog, 0.9).unwrap();
//! assert!(r > 0.99);
//! ```

pub mod balance;
pub mod cli;
pub mod error;
pub mod output;
pub mod reliability;
pub mod system;
pub mod tiesets;

pub use balance::{
    center_of_gravity, check_bc1, check_bc2, check_bc3, classify, count_symmetry_axes, reverse_tuple,
    trig_progression_sum, BalanceReport, CenterOfGravity, SymmetryProfile, DEFAULT_TOLERANCE,
};
pub use error::{Error, Result};
pub use reliability::{
    reliability_exact, reliability_product, structure_function, sweep, table1_counts, CountRow, ReliabilityRow,
    ReliabilityTable, StateVector, SweepOptions, WorkingStateProfile,
};
pub use system::{distance_tuple, make_unit_set, BalanceCondition, DistanceTuple, SystemConfig, UnitSet};
pub use tiesets::{enumerate_minimum_tiesets, enumerate_tiesets, minimal_filter, TieSetCatalog};
