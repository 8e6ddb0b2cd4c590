//! Unknotting-number bounds for pretzel knots.
//!
//! The crate computes the classical invariants of `P(a_1, ..., a_n)`, its Jones
//! polynomial and the value at `ω = e^{iπ/3}`, searches lattice embeddings of the
//! negated Goeritz form into `Z^m` for half-integer-surgery complements, and
//! assembles these into lower and upper bounds on the unknotting number with a
//! checked rule trace.

pub mod algebra;
pub mod bounds;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod jones;
pub mod lattice;
pub mod matrix;
pub mod pretzel;

pub use error::{Error, Result};
pub use pretzel::PretzelParams;
