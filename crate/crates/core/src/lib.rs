//! Exact machinery for uniform simultaneous rational approximation to successive
//! powers of a real number.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod lattice;
pub mod minimal;
pub mod projections;
pub mod suites;

pub use error::{Error, Result};
