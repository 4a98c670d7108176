//! Numerical checks of theta/Eisenstein identities for even unimodular lattices.

pub mod eisenstein;
pub mod identity;
pub mod lattice;
pub mod series;
pub mod theta;

pub use eisenstein::{eisenstein_direct, eisenstein_q, eisenstein_rank1, Rank1};
pub use identity::{classical_identity, eisenstein_lhs, mass_constant, verify_identity, ClassicalReport, IdentityReport, LhsValues};
pub use lattice::{IntegralLattice, ShellCounts, E8_AUT_ORDER};
pub use series::Evaluation;
pub use theta::{theta_basic, theta_colinear, theta_colinear_direct, theta_colinear_product, theta_q_coefficients, SiegelPoint, TruncationPlan};
