use thiserror::Error;

/// Errors that are not axiom failures.
///
/// Axiom failures are reported through check reports; this type covers
/// malformed input, exhausted budgets and refused constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("budget exceeded: {what} needs {size} elements, limit is {limit}")]
    Budget { what: String, size: u128, limit: u128 },
    #[error("refused: {0}")]
    Refused(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), msg: msg.into() }
    }

    pub fn budget(what: impl Into<String>, size: u128, limit: u128) -> Self {
        Error::Budget { what: what.into(), size, limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
