use ellipsoid_entropy::EntropyError;
use thiserror::Error;

/// Process exit status, as promised in `--help`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExitStatus(pub u8);

impl ExitStatus {
    pub const OK: ExitStatus = ExitStatus(0);
    pub const INVALID: ExitStatus = ExitStatus(2);
    pub const NON_COMPACT: ExitStatus = ExitStatus(3);
    pub const CAP: ExitStatus = ExitStatus(4);
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Entropy(e) => match e {
                EntropyError::NonCompact { .. } | EntropyError::DivergentTail(_) => ExitStatus::NON_COMPACT,
                EntropyError::EnumerationTooLarge { .. }
                | EntropyError::ScanCapExceeded { .. }
                | EntropyError::NoFeasibleDimension { .. }
                | EntropyError::DimensionTooLarge { .. } => ExitStatus::CAP,
                _ => ExitStatus::INVALID,
            },
            _ => ExitStatus::INVALID,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type CliResult<T> = std::result::Result<T, CliError>;
