use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error at {line}:{column}: {message}")]
    Parse { message: String, line: usize, column: usize },

    #[error("invalid construction: {0}")]
    InvalidSpec(String),

    #[error("malformed interval [{lo}, {hi}]: lower end exceeds upper end")]
    MalformedInterval { lo: String, hi: String },

    #[error("union is not contained in the ambient interval {0}")]
    NotContained(String),

    #[error("{0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("{x} has no admissible base-{base} expansion: digit {digit} forced at position {position}")]
    NotInSet { x: String, base: u32, position: usize, digit: u32 },

    #[error("resource limit: {0}")]
    Resource(String),
}

/// Coarse error classes, used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Domain,
    Resource,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ZeroDenominator
            | Error::Parse { .. }
            | Error::InvalidSpec(_)
            | Error::MalformedInterval { .. }
            | Error::NotContained(_) => ErrorClass::Validation,
            Error::OutOfUnitInterval(_) | Error::NotInSet { .. } => ErrorClass::Domain,
            Error::Resource(_) => ErrorClass::Resource,
        }
    }
}
