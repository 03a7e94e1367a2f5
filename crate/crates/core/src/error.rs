use thiserror::Error;

use crate::polyring::CoefficientField;

/// Errors raised by the algebra kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("coefficient field mismatch: {0} vs {1}")]
    FieldMismatch(CoefficientField, CoefficientField),

    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("variable index {index} out of range 1..={nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("denominator not invertible modulo {0}")]
    NotInvertible(u64),

    #[error("initial term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix index ({row}, {col}) out of range for {rows}x{cols}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("minor size {t} out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange { t: usize, rows: usize, cols: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),

    #[error("Groebner budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
