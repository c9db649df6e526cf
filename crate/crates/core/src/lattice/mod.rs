//! Rational subspaces of `R^m` through saturated integer bases: heights, complements,
//! sums and intersections, exterior products and `L_ξ`.

mod approx;
pub mod matrix;
mod plucker;
mod subspace;
mod vector;

pub use approx::{hadamard_diagnostic, l_xi};
pub use plucker::{plucker_coordinates, wedge_norm_squared, PLUCKER_MAX_AMBIENT};
pub use subspace::{int_json, parse_matrix, vector_json, Subspace};
pub use vector::IntegerVector;
