use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph JSON: {0}")]
    Json(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),

    #[error("edge id `{0}` used twice")]
    DuplicateEdge(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("{what} exceeds configured bound ({size} > {bound})")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("negative entry {0} in a matrix expected to be non-negative")]
    NegativeEntry(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    /// Two independent routes to the same quantity disagreed. This is never a
    /// property of the input graph; it signals a bug.
    #[error("oracle mismatch in {context}: {detail}")]
    OracleMismatch { context: &'static str, detail: String },
}
