use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("unknown pair {id:?}; known pairs: {known}")]
    UnknownPair { id: String, known: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("non-integral root value: {0}")]
    NonIntegral(String),
    #[error("invariant check failed ({check}): {detail}")]
    Invariant { check: &'static str, detail: String },
    #[error("guard exceeded: {0}")]
    Guard(String),
    #[error("degenerate evaluation point: {0}")]
    DegeneratePoint(String),
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("insufficient validity: {0}")]
    Validity(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invariant(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant { check, detail: detail.into() }
    }
}
