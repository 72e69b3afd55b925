//! Conjugacy-class counting for permutation groups, a mechanical check of the
//! lower bound `k(A_n) >= (k(A_7) / log2|A_7|) log2|A_n|`, and a genetic search
//! for groups with a small ratio `k(G) / log2|G|`.
//!
//! Real-valued quantities are generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below fix the scalar for the common case.

pub mod bounds;
pub mod classes;
pub mod fixtures;
pub mod group;
pub mod partitions;
pub mod perm;
pub mod scalar;
pub mod search;

pub use classes::{ClassCount, ClassError, CountMethod};
pub use group::{GroupError, GroupSpec, PermGroup};
pub use partitions::PartitionTable;
pub use perm::{CycleType, Parity, PermError, Permutation};
pub use scalar::Real;
pub use search::{SearchConfig, SearchReport};

/// Ratio report in double precision.
pub type RatioReport = bounds::RatioReport<f64>;
/// Ratio report in single precision.
pub type RatioReportF32 = bounds::RatioReport<f32>;
/// Bound-check verdict in double precision.
pub type TheoremVerdict = bounds::TheoremVerdict<f64>;
/// Bound-check verdict in single precision.
pub type TheoremVerdictF32 = bounds::TheoremVerdict<f32>;
