use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    /// The operation needs the dense tensor of an instance that only has
    /// an oracle.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for MapError {
    fn from(e: std::io::Error) -> Self {
        MapError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, MapError>;
