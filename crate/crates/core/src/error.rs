use thiserror::Error;

/// Errors produced by the operator, measure and model constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operator must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("operator has a non-finite entry")]
    NonFinite,

    #[error("function undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("operator is not positive (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("POVM validation failed: {0}")]
    InvalidPovm(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("operator norm {norm:.6} exceeds 1")]
    NotContraction { norm: f64 },

    #[error("condition number {cond:.3e} exceeds the limit {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    #[error("operator is singular")]
    Singular,

    #[error("not aligned to the grid: {0}")]
    Misaligned(String),

    #[error("guard violated: {0}")]
    Guard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
