//! Exact algebra of symplectic nilpotent t-modules (snt-modules), orbit classification for
//! orthogonal groups over `F[t]/(t^K)`, and numerical checks of theta/Eisenstein identities
//! for even unimodular lattices.

pub mod analytic;
pub mod error;
pub mod guard;
pub mod orbits;
pub mod ring;
pub mod snt;
pub mod spgroup;

pub use error::{Error, Result};
pub use ring::{Field, Matrix, Scalar, Subspace, TPolyMatrix, TruncPoly, Vector};
pub use snt::{Decomposition, LagrangianFlag, SntModule, SntSubmodule};
