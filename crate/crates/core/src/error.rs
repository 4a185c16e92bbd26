use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph descriptor `{spec}`: {reason}")]
    Descriptor { spec: String, reason: String },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has {n} vertices, above the exhaustive-search bound of {bound}")]
    SizeBound { n: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph mismatch: {0}")]
    GraphMismatch(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("invalid strategy: {0}")]
    Strategy(String),

    #[error("invalid representation document: {0}")]
    RepFormat(String),

    #[error("internal verification failure: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
