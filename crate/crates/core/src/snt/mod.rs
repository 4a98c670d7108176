//! snt-modules: structure, submodules, t-Lagrangians and the fibration over `Gr(M_-, t)`.

use std::fmt;

pub mod decompose;
pub mod enumerate;
pub mod lagrangian;
pub mod module;
pub mod rho;
pub mod submodule;

pub use decompose::{decompose, Decomposition};
pub use enumerate::enumerate_t_lagrangians;
pub use lagrangian::{is_t_lagrangian, standard_t_lagrangian, LagrangianFlag};
pub use module::SntModule;
pub use rho::{fw_dimension, rho_of, RhoData};
pub use submodule::{quasi_basis, SntSubmodule};

/// A failed module axiom, as reported by [`SntModule::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OddDimension(usize),
    NotAlternating,
    Degenerate,
    NotNilpotent,
    NotSelfDual,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddDimension(n) => write!(f, "dimension {n} is not even and positive"),
            Violation::NotAlternating => write!(f, "not alternating"),
            Violation::Degenerate => write!(f, "gram is degenerate"),
            Violation::NotNilpotent => write!(f, "t_action is not nilpotent"),
            Violation::NotSelfDual => write!(f, "t_action is not self-dual"),
        }
    }
}
