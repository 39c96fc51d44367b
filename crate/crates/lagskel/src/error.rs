//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid energy: {0}")]
    InvalidEnergy(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("multiplier outside the search region (dimension {dim})")]
    LambdaOutsideBox { dim: usize },

    #[error("search region dimension {0} exceeds the supported maximum of 3")]
    UnsupportedDimension(usize),

    #[error("energy is not submodular; the mincut oracle requires submodularity")]
    NonSubmodular,

    #[error(
        "search region violates the submodularity bound on dimension {dim}: \
         lower bound must be at least {bound}"
    )]
    BoxViolatesSubmodularity { dim: usize, bound: String },

    #[error("constraint has a negative edge-disagreement coefficient; \
             disagreement coefficients must be positive")]
    NegativeEdgeCoefficient,

    #[error("problem too large for exhaustive enumeration: {n} variables (limit {limit})")]
    TooManyVariables { n: usize, limit: usize },

    #[error("graph has no path from source to target")]
    NoPath,

    #[error("modified edge weight is negative at multiplier inside the region (edge {edge})")]
    NegativeEdgeWeight { edge: usize },

    #[error("oracle call budget of {budget} exhausted after {calls} calls")]
    BudgetExhausted { budget: u64, calls: u64 },

    #[error(
        "oracle call budget exhausted after {} calls; partial results attached",
        .0.report.oracle_calls
    )]
    Budget(Box<crate::solver::PartialSearch>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Malformed(String),
}
