use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("non-finite value in matrix")]
    NonFinite,
    #[error("invalid architecture: {0}")]
    Architecture(String),
    #[error("invalid circuit point: {0}")]
    CircuitPoint(String),
    #[error("invalid gate set: {0}")]
    GateSet(String),
    #[error("invalid generator list: {0}")]
    Generators(String),
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
