use thiserror::Error;

/// Errors shared by the GTSP crates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GtspError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported edge-weight type {0}")]
    UnsupportedEdgeWeightType(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("invalid tour: {0}")]
    InvalidTour(String),
    #[error("infeasible cluster order: every transition of layer {layer} is blocked")]
    InfeasibleOrder { layer: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, GtspError>;
