use thiserror::Error;

/// Errors produced by construction, algebra and bound computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry at ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("operation would allocate {required} elements, above the cap of {cap}")]
    ElementCapExceeded { required: u128, cap: u128 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("QR iteration did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("automaton is not alive: state {state} has no outgoing transition")]
    NotAlive { state: usize },

    #[error("duplicate transition for (state {state}, label {label})")]
    NondeterministicEdge { state: usize, label: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
