use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed expression text. `column` is 1-based.
    #[error("column {column}: expected {expected}, found {found}")]
    Parse {
        column: usize,
        expected: String,
        found: String,
    },

    /// Well-formed text naming a space or group that does not exist.
    #[error("column {column}: {message}")]
    Domain { column: usize, message: String },

    /// A space whose structural invariants are violated (e.g. `S^0`).
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("unsupported capacity: {0}")]
    UnsupportedCapacity(String),

    #[error("group {group} exceeds the brute-force size limit ({limit})")]
    SizeLimit { group: String, limit: u64 },
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::Domain { .. } => "domain_error",
            Error::InvalidSpace(_) => "invalid_space",
            Error::UnsupportedSpace(_) => "unsupported_space",
            Error::UnsupportedCapacity(_) => "unsupported_capacity",
            Error::SizeLimit { .. } => "size_limit",
        }
    }
}
