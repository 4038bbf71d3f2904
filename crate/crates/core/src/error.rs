use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("remainder not concentrated in pi-degree {degree}: lowest nonzero degree is {found}")]
    NotConcentrated { degree: usize, found: usize },
    #[error("leading coefficient check failed at index {0}")]
    LinearityFailure(usize),
    #[error("ring is not perfect: {0}")]
    NotPerfect(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
