use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the novelty-ranking routines.
///
/// Variants split into two families: caller mistakes (bad indices, invalid
/// configuration, oversized enumerations) and malformed data (shape or
/// non-finite values). [`Error::is_usage`] tells them apart.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "exhaustive search over {subsets} subsets exceeds the enumeration cap of {cap}; reduce N or k"
    )]
    EnumerationCap { subsets: u128, cap: u128 },

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
}

impl Error {
    /// True for errors caused by how the API was called rather than by the data.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::IndexOutOfRange { .. } | Error::InvalidConfig(_) | Error::EnumerationCap { .. }
        )
    }
}
