use thiserror::Error;

/// Errors raised by the laboratory's operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} exceeds the supported maximum of 1024")]
    DimensionTooLarge(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("empty subset")]
    EmptySubset,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("inconsistent factorization: factors multiply to {product}, state has dimension {dim}")]
    InconsistentFactorization { product: usize, dim: usize },
    #[error("group order overflow: {0} exceeds 4096")]
    OrderOverflow(usize),
    #[error("invalid group spec `{0}`")]
    InvalidGroupSpec(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid problem id `{0}`")]
    InvalidProblemId(String),
    #[error("qubit budget exceeded: {needed} qubits requested, at most {limit} allowed")]
    QubitBudget { needed: usize, limit: usize },
    #[error("zero-probability branch (p = {0:.3e}); advice and protocol are inconsistent")]
    ZeroProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support mismatch: universes {0} and {1}")]
    SupportMismatch(usize, usize),
    #[error("partial function: {0}")]
    PartialFunction(String),
    #[error("size overflow: {0}")]
    SizeOverflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
