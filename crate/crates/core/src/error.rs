use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("point {0} is out of range")]
    PointOutOfRange(String),
    #[error("point {0} is in no block")]
    MissingPoint(String),
    #[error("point {0} is in two blocks")]
    DuplicatePoint(String),
    #[error("points must be distinct")]
    SamePoint,
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("cannot rotate {0}: source row is empty")]
    EmptyRow(&'static str),
    #[error("not a turn: {0}")]
    NotATurn(String),
    #[error("point set is not consecutive")]
    NotConsecutive,
    #[error("{points} points exceed the cap of {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
