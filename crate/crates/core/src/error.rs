use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index}: endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, vertex: i64, n: usize },

    #[error("edge {index}: negative weight {weight}")]
    NegativeWeight { index: usize, weight: i64 },

    #[error("edge {index}: weight {weight} exceeds the maximum {max}")]
    WeightTooLarge { index: usize, weight: i64, max: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
