use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is a zero divisor and has no inverse")]
    NotInvertible,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds 4")]
    DegreeTooHigh(usize),
    #[error("membership is undecidable on an unresolved solution set")]
    UndecidableOnUnresolved,
    #[error("cannot sample from an empty set")]
    EmptySet,
    #[error("no rational points found within the search budget")]
    SamplerExhausted,
    #[error("grid has {0} points, more than the limit of 10^7")]
    GridTooLarge(u128),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("degenerate path precondition failed: {0}")]
    DegeneratePreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
