use thiserror::Error;

/// Errors produced by the exact-arithmetic toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` has no assigned value")]
    MissingAssignment(String),
    #[error("variable `{0}` was assigned zero; evaluation points must be nonzero")]
    ZeroEvaluationPoint(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error in `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("elements live over different graphs")]
    GraphMismatch,
    #[error("graph must be connected for this operation")]
    DisconnectedGraph,
    #[error("matrix must be square (got {rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element is not well-tempered: {0}")]
    NotWellTempered(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
