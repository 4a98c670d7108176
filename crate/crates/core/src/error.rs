use thiserror::Error;

use crate::snt::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("truncation orders differ: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("element is not a unit (zero constant term)")]
    NotAUnit,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid snt-module: {}", join_violations(.0))]
    InvalidModule(Vec<Violation>),
    #[error("subspace is not t-stable")]
    NotTStable,
    #[error("subspace is not t-Lagrangian")]
    NotLagrangian,
    #[error("invalid Lagrangian flag: {0}")]
    InvalidFlag(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size guard exceeded for {what}: {size} > {limit}")]
    SizeGuard { what: String, size: u128, limit: u128 },
    #[error("matrix is not an element of Sp(M,t)")]
    NotMember,
    #[error("module is not homogeneous")]
    NotHomogeneous,
    #[error("matrix is singular")]
    Singular,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("isometry data mismatch: {0}")]
    IsometryMismatch(String),
    #[error("invalid orthogonal space: {0}")]
    InvalidOrthSpace(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("truncation target {target:e} not reached; achieved {achieved:e}")]
    Truncation { achieved: f64, target: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
