use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} is beyond the table of length {len} and no tail is defined")]
    IndexBeyondTable { index: u64, len: usize },

    #[error("counting function is unbounded: the sequence never drops below {threshold}")]
    UnboundedCount { threshold: f64 },

    #[error("semi-axis sequence is not {0}")]
    InvalidSequence(String),

    #[error("tail sum diverges: {0}")]
    DivergentTail(String),

    #[error("radius {eps} outside the admissible interval (0, {upper}]")]
    RadiusOutOfRange { eps: f64, upper: f64 },

    #[error("dimension {got} is too small, need at least {min}")]
    DimensionTooSmall { got: usize, min: usize },

    #[error("dimension {got} is too large, at most {max} supported")]
    DimensionTooLarge { got: usize, max: usize },

    #[error("non-compact regime ({case}): entropy is infinite")]
    NonCompact { case: String },

    #[error("unsupported corner case: {0}")]
    UnsupportedCorner(String),

    #[error("wrong regime: {0}")]
    WrongRegime(String),

    #[error("no feasible dimension found below the scan cap {cap}")]
    NoFeasibleDimension { cap: u64 },

    #[error("scan cap {cap} exceeded")]
    ScanCapExceeded { cap: u64 },

    /// The count is still reported so callers can print it.
    #[error("enumeration of {count} items exceeds the cap {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },
}

pub type Result<T> = std::result::Result<T, EntropyError>;

pub(crate) fn invalid(msg: impl Into<String>) -> EntropyError {
    EntropyError::InvalidParameter(msg.into())
}
