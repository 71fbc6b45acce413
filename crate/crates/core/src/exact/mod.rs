//! Exact rational algebra: scalars, polynomials in `z`, and dense matrices
//! over both.

pub mod matrix;
pub mod multi;
pub mod poly;
pub mod poly_matrix;
pub mod scalar;

pub use matrix::{j2, mat_mul, Matrix};
pub use multi::MultiPoly;
pub use poly::Poly;
pub use poly_matrix::{poly_adjugate, PolyMatrix};
pub use scalar::{format_scalar, int, is_integer, parse_scalar, rat, Scalar};
