use core::fmt;

/// Failures of the scalar interval operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalError {
    /// Lower endpoint above upper endpoint.
    Inverted,
    /// NaN or infinite input, or an operand outside the domain (sqrt of a
    /// negative interval).
    Domain,
    /// An endpoint left the finite range.
    Overflow,
    /// Divisor interval contains zero.
    DivisionByZero,
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::Inverted => f.write_str("invalid interval: lower endpoint exceeds upper"),
            IntervalError::Domain => f.write_str("domain error: non-finite or out-of-domain operand"),
            IntervalError::Overflow => f.write_str("interval overflow: endpoint is not finite"),
            IntervalError::DivisionByZero => f.write_str("division by an interval containing zero"),
        }
    }
}

impl core::error::Error for IntervalError {}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Interval(IntervalError),
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Midpoint matrix of a linear system is numerically singular.
    Singular,
    /// The enclosure iteration did not produce a box mapped into its own
    /// interior.
    VerificationFailed {
        iterations: usize,
    },
    /// Least-squares design matrix lost rank at the given column.
    RankDeficient {
        column: usize,
    },
    InsufficientData {
        needed: usize,
        available: usize,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// A simulated value became non-finite (or an interval overflowed).
    Divergence {
        step: usize,
    },
    /// RMSE denominator is zero or an interval containing zero.
    ZeroDenominator,
    InvalidArgument(&'static str),
    /// Computed point parameters escaped the interval enclosure.
    ContainmentViolation {
        index: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl From<IntervalError> for Error {
    fn from(e: IntervalError) -> Self {
        Error::Interval(e)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Interval(e) => e.fmt(f),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}x{}, found {}x{}", expected.0, expected.1, found.0, found.1)
            }
            Error::Singular => f.write_str("matrix is numerically singular"),
            Error::VerificationFailed { iterations } => {
                write!(f, "verification failed: no enclosure verified after {} iterations", iterations)
            }
            Error::RankDeficient { column } => {
                write!(f, "rank deficient regressor matrix at column {}", column)
            }
            Error::InsufficientData { needed, available } => {
                write!(f, "insufficient data: need more than {} samples, have {}", needed, available)
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {}, found {}", expected, found)
            }
            Error::Divergence { step } => write!(f, "simulation diverged at step {}", step),
            Error::ZeroDenominator => f.write_str("zero (or zero-containing) denominator"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {}", what),
            Error::ContainmentViolation { index } => {
                write!(f, "internal error: point parameter {} outside its interval enclosure", index)
            }
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Interval(e) => Some(e),
            _ => None,
        }
    }
}
