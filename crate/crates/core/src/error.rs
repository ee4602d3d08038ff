use thiserror::Error;

use crate::validity::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed path text; `position` is the 0-based character offset.
    #[error("cannot parse path text at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("diagonal {index} is outside the path's range {low}..={high}")]
    OutOfRange { index: i64, low: i64, high: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// The input path fails the validity condition; carries the witness.
    #[error("path is invalid: {0}")]
    InvalidPath(Violation),

    #[error("{steps} steps exceed the step budget of {budget}")]
    Budget { steps: u64, budget: u64 },

    #[error("count overflowed the target integer type")]
    Overflow,

    /// A structural guarantee of the construction did not hold. Never expected.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
