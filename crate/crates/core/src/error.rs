use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("instance too large: C({n}, {d}) does not fit the hyperedge count representation")]
    InstanceTooLarge { n: usize, d: usize },

    #[error("degree mismatch: truth has degree {truth}, estimate has degree {estimate}")]
    DegreeMismatch { truth: usize, estimate: usize },

    #[error("recovery needs target degree at least 3, got {0}")]
    DegreeTooSmall(usize),

    #[error("oracle instance too large: {vertices} vertices exceeds the limit of {limit}")]
    OracleTooLarge { vertices: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
