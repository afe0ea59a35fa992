use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An enumeration would produce more items than the configured limit.
    #[error("capacity exceeded: {what} exceeds the limit of {limit}")]
    Capacity { what: String, limit: usize },

    #[error("brute-force bound exceeded: degree {degree} is larger than {bound}")]
    BruteForceBound { degree: usize, bound: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, limit: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            limit,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::BruteForceBound { .. })
    }
}
