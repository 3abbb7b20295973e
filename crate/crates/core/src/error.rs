use thiserror::Error;

/// Errors raised by the numerical kernel, the physics layer and the sweep/CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric: max |m[i][j] - m[j][i]| = {max_asymmetry:e}")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries for a square matrix, got {got}")]
    BadShape { expected: usize, got: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPsd { eigenvalue: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "temperature must be finite and > 0, got {0}; use the zero-temperature state for T = 0"
    )]
    NonPositiveTemperature(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("complex-valued density matrices are not supported (max |Im| = {max_imag:e})")]
    ComplexUnsupported { max_imag: f64 },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unknown figure id {0:?} (expected fig1..fig5)")]
    UnknownFigure(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
