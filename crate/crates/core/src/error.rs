use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("empty vertex set passed as `{0}`")]
    EmptySet(&'static str),

    /// An exact routine was asked to work above its configured limit.
    #[error("capacity exceeded for {what}: {actual} > {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A constructive routine produced no certified outcome even though one is
    /// guaranteed to exist. Always a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
