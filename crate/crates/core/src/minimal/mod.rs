//! Minimal points of a real number, their index structure, exponent estimates and the
//! hyperplane determinant construction.

mod construct;
mod enumerate;
mod exponents;
mod structure;

pub use construct::construct_c;
pub use enumerate::{
    brute_force_minimal_points, candidate, check_staircase, enumerate_minimal_points, refresh_l,
    EnumerateOptions, MinimalPointRecord, BRUTE_FORCE_MAX, L_DIGITS,
};
pub use exponents::{estimate_exponents, ExponentEstimate};
pub use structure::{build_structure, check_p, PCheck, PReport, StructureIndex};
