//! Deutsch-Jozsa as discrimination between two quantum operations.
//!
//! The constant and balanced classes of phase oracles `U_f|x> = (-1)^f(x)|x>`
//! each induce a class-averaged channel on an initial density operator. This
//! crate builds those channels (closed form and brute-force ensemble average),
//! evaluates two-outcome POVM discrimination between them, certifies which
//! initial states discriminate with certainty, and runs the resulting
//! algorithm against every admissible oracle.
//!
//! Modules:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigensolver, trace norm, support projectors.
//! - [`oracle`]: Boolean oracles, classification, phase unitaries, class enumeration.
//! - [`channels`]: constant/balanced class channels and the dephasing map.
//! - [`discrimination`]: success probability, Helstrom benchmark, certainty certificate, state search.
//! - [`dj`]: oracle-algorithm pipelines, exhaustive sweeps, classical query witness.
//! - [`sampling`]: seeded random states and operators.

#![forbid(unsafe_code)]

pub mod channels;
pub mod discrimination;
pub mod dj;
mod error;
pub mod linalg;
pub mod oracle;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{C64, ComplexMatrix, DensityOperator, EigenSystem, PureState};
pub use oracle::{BooleanOracle, FunctionClass};

/// Tolerance for validity checks (Hermiticity, PSD, unit trace, unitarity).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for equalities that hold exactly in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;
