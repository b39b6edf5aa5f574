use thiserror::Error;

/// Errors surfaced by the simulator and its harness.
#[derive(Error, Debug)]
pub enum LossError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid patch layout: {0}")]
    InvalidLayout(String),

    #[error("position {x} outside domain [{min}, {max}]")]
    OutOfDomain { x: f64, min: f64, max: f64 },

    #[error("invalid inverse row index {row} (valid range -1..={max})")]
    InvalidRow { row: i64, max: i64 },

    #[error("invalid absorbing layer: {0}")]
    InvalidPml(String),

    #[error("{path}:{line}: {msg}")]
    Config {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("snapshot format error: {0}")]
    Snapshot(String),

    #[error("reference field is identically zero; relative error undefined")]
    ZeroReference,

    #[error(
        "reference horizon violated: c_max*T = {travel} exceeds the {margin} extension margin"
    )]
    HorizonViolation { travel: f64, margin: f64 },

    #[error("non-finite value detected at step {step} in field {field}")]
    NonFinite { step: usize, field: String },

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
