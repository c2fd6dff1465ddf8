use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("elements live in different groups: {0}")]
    GroupMismatch(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("degree {degree} is outside the truncation range 0..={top}")]
    Truncation { degree: i64, top: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("simplicial identity violated: {0}")]
    Identity(String),
    #[error("sequence not exact: {0}")]
    Inexact(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
