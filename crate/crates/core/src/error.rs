use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants split into two families: input problems (bad files, unknown
/// names, malformed data) and mathematical refusals (a precondition of an
/// operation does not hold, or the window is too small to answer exactly).
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("relation not in (kQ+)^2: {0}")]
    RelationTooShort(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("window insufficient at degree {degree}: {what}")]
    WindowInsufficient { what: String, degree: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn window(what: impl Into<String>, degree: i64) -> Self {
        Error::WindowInsufficient { what: what.into(), degree }
    }

    pub fn parse(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { at: at.into(), msg: msg.into() }
    }

    /// True for refusals that stem from the mathematics rather than the input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::WindowInsufficient { .. }
                | Error::Precondition(_)
                | Error::Unsupported(_)
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
