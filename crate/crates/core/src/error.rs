use thiserror::Error;

#[derive(Debug, Error)]
pub enum LuError {
    #[error("qubit index {index} out of range for a {n}-qubit state")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported size: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = LuError> = std::result::Result<T, E>;
