use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input (bad token, empty word, size guard).
    #[error("input error: {0}")]
    Input(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A node budget, length cap or size guard stopped the computation.
    #[error("resource limit: {0}")]
    Resource(String),
    /// The request needs a value that is not known (e.g. gamma(k) for k > 4).
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
