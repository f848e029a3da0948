use thiserror::Error;

/// Errors raised by the rsat library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("invalid truth-value set: {0}")]
    InvalidVspec(String),
    #[error("innocuous literal x{var} {relation} {bound}")]
    InnocuousLiteral {
        var: u32,
        relation: &'static str,
        bound: String,
    },
    #[error("bound {bound} is not a truth value of {vspec}")]
    BoundNotInDomain { bound: String, vspec: String },
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("variable x{0} has no assigned value")]
    MissingAssignment(u32),
    #[error("candidate domain is empty")]
    EmptyDomain,
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("occurrence profile sums to {got}, expected k*m = {expected}")]
    ProfileMismatch { expected: u64, got: u64 },
    #[error("wrong truth-value set: {0}")]
    WrongVspec(String),
    #[error("two literals share the right-hand side {0}")]
    DuplicateThresholds(String),
    #[error("resource limit exhausted after {0} steps")]
    ResourceLimit(u64),
    #[error("operation requires k = 2, formula has k = {0}")]
    WrongArity(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("snake length {0} must be even and at least 6")]
    OddLength(usize),
    #[error("domain error: {0}")]
    DomainError(String),
}
