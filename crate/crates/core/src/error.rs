use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate state label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown state label `{0}`")]
    UnknownLabel(String),
    #[error("pair ({0}, {1}) given more than once")]
    DuplicateEntry(String, String),
    #[error("rate {rate} on ({from}, {to}) is negative or not finite")]
    InvalidRate { from: String, to: String, rate: f64 },
    #[error("self-loop entry on `{0}`")]
    SelfLoop(String),
    #[error("a graph needs at least 2 states, got {0}")]
    TooFewStates(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("graph is not irreducible")]
    NotIrreducible,
    #[error("graph is not reversible")]
    NotReversible,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("function is not orthogonal to constants (<f,1>_mu = {0})")]
    NotCentered(f64),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid group weight: {0}")]
    InvalidWeight(String),
    #[error("{what} has {size} elements, above the cap of {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("subgroup pair is not regular")]
    NotRegular,
    #[error("inclusion violated: {0}")]
    InclusionViolated(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
