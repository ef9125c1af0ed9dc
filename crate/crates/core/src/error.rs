use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("curve is not essential: {0}")]
    NotEssential(String),
    #[error("curve is not oriented")]
    Unoriented,
    #[error("curves live on different surfaces")]
    SurfaceMismatch,
    #[error("geometry failure: {0}")]
    Geometry(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("terminal pair: {0}")]
    Terminal(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("certificate mismatch: {0}")]
    Certificate(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
