//! Exact finite-lattice simulator and verifier for the double semion model on
//! honeycomb regions.
//!
//! Operators are products of Pauli X with diagonal phases that are quadratic
//! forms modulo 4, so every computation is exact. States are sparse vectors
//! with Gaussian-integer amplitudes and a power-of-two normalisation.

pub mod anyons;
pub mod category;
pub mod error;
pub mod groundstate;
pub mod lattice;
pub mod pauli_ops;
pub mod purity;
pub mod report;
pub mod strings;
pub mod tqd;

pub use error::{Error, Result};
