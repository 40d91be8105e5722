use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A probability table or parameter set violates its invariants.
    #[error("validation error: {0}")]
    Validation(String),
    /// Arguments are individually valid but do not fit together.
    #[error("argument error: {0}")]
    Argument(String),
    /// A closed form was evaluated outside the range where it is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Floating error beyond what the computation can absorb.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("malformed channel file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
