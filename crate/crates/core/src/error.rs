use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("expected a nonempty element set")]
    EmptySet,

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("invalid index-2 parameters: {0}")]
    InvalidParams(String),

    #[error("{what} = {value} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("sequence belongs to a group of order {found}, expected order {expected}")]
    GroupMismatch { expected: usize, found: usize },

    #[error("sequence is not a subsequence of the given sequence")]
    NotSubsequence,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group of order {order} exceeds the search cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object contradicts a closed formula it is checked against.
    #[error("cross-check failed: {0}")]
    Mismatch(String),
}
