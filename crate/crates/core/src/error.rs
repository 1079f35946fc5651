use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A data line repeats a column token. `line` is 1-based in the source text.
    #[error("malformed row on line {line}: duplicate column token {token:?}")]
    MalformedRow { line: usize, token: String },

    #[error("invalid row {row}: {reason}")]
    InvalidRow { row: usize, reason: String },

    #[error("bad generator spec: {0}")]
    BadSpec(String),

    #[error("instance too large for the exhaustive oracle: {n} columns (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    /// The order handed to swap partitioning is not a swap overlap order.
    #[error("invalid swap order: {0}")]
    InvalidOrder(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
