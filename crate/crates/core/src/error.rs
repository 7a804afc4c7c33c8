use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0} needs a compact interval base; use a sampled pseudo-distance instead")]
    NonCompact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
