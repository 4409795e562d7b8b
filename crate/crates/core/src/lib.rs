//! Exact computations around truncated Grassmannians.
//!
//! The crate covers the combinatorial side (partitions, weights, index sets,
//! Borel–Weil–Bott, Koszul layers, Grothendieck-ring identities) and the
//! geometric side (exact rational linear algebra, Plücker maps, Schubert
//! conditions, polynomial ideals, fibers of blow-ups along Schubert varieties).
//! Everything is exact: rationals and big integers, no floating point.

pub mod bwb;
pub mod checks;
pub mod combinatorics;
pub mod error;
pub mod fibers;
pub mod groebner;
pub mod interp;
pub mod linalg;
pub mod oracle;
pub mod plucker;
pub mod poly;
pub mod rational;
pub mod resolution;
pub mod sampling;

pub use error::{Error, Result};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
