use std::io;
use std::path::PathBuf;

use narxiv_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{line}: {msg}", path.display())]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{0}")]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// 2 for numerical failures (rank, verification, divergence, ...),
    /// 1 for everything caused by the invocation or its inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(e) => match e {
                CoreError::Interval(_)
                | CoreError::Singular
                | CoreError::VerificationFailed { .. }
                | CoreError::RankDeficient { .. }
                | CoreError::Divergence { .. }
                | CoreError::ZeroDenominator
                | CoreError::ContainmentViolation { .. } => 2,
                CoreError::DimensionMismatch { .. }
                | CoreError::InsufficientData { .. }
                | CoreError::LengthMismatch { .. }
                | CoreError::InvalidArgument(_) => 1,
            },
            _ => 1,
        }
    }
}

/// Parse failure located by line, before a path is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub msg: String,
}

impl LineError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        LineError { line, msg: msg.into() }
    }

    pub fn at(self, path: impl Into<PathBuf>) -> Error {
        Error::Parse { path: path.into(), line: self.line, msg: self.msg }
    }
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for LineError {}
