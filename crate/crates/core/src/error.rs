use alloc::string::String;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e} exceeds {bound:e})")]
    NotHermitian { asymmetry: f64, bound: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry buffer has {got} elements, expected {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("invalid dimension: {0}")]
    BadDimension(String),
    #[error("singular block: {0}")]
    SingularBlock(String),
    #[error("diagonal blocks are not positive semidefinite: {0}")]
    BlocksNotPsd(String),
    #[error("no PSD upper bracket found for alpha up to {limit:e}")]
    NoUpperBracket { limit: f64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("trace has imaginary part {imag:e}")]
    NonRealTrace { imag: f64 },
    #[error("map callable returned {got_rows}x{got_cols}, expected {expected}x{expected}")]
    CallableDimensionMismatch {
        expected: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
