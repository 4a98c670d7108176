//! Exact scalars, truncated polynomial rings and linear algebra over them.

pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod smith;
pub mod truncpoly;

pub use linalg::{AffineSolution, Subspace};
pub use matrix::{Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use smith::{smith_form_t, solve_rk, SmithForm, TPolyMatrix};
pub use truncpoly::TruncPoly;
