use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("division by a zero ball O({p}^{prec})")]
    DivisionByExactZeroBall { p: u32, prec: i64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("factors are not coprime modulo p")]
    NotCoprime,

    #[error("basis is not orthonormally generated")]
    NotOrthonormal,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, PadicError>;
