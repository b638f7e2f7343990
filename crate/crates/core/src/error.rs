use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label {0:?}")]
    BadLabel(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("truncation too shallow: {0}")]
    TruncationTooShallow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration exceeded the cap of {cap} ({what})")]
    CapExceeded { cap: usize, what: String },
    #[error("functor is not functorial: {0}")]
    NotFunctorial(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
