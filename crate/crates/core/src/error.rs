use thiserror::Error;

/// Errors raised by the library. Parse failures are kept apart from domain
/// failures so the CLI can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    MixedRadicands(String, String),

    #[error("radicand must be a positive integer, got {0}")]
    BadRadicand(String),

    #[error("expected an irrational quadratic number, got the rational {0}")]
    RationalInput(String),

    #[error("value {value} outside the admissible range {range}")]
    OutOfRange { value: String, range: String },

    #[error("convergent index {index} beyond the length {len} of a finite expansion")]
    IndexBeyondExpansion { index: usize, len: usize },

    #[error("determinant {0} is not a unit")]
    NotUnimodular(String),

    #[error("Möbius image undefined: denominator vanishes")]
    VanishingDenominator,

    #[error("substitution error: {0}")]
    Substitution(String),

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("Perron data is only approximate; an exact eigenvalue is required")]
    NotExact,

    #[error("no letter admits a fixed prefix under a power of the substitution")]
    NoFixedPrefix,

    #[error("patch does not occur in the tiling at its stated position")]
    PatchNotFound,

    #[error("vector {0} is not an integer combination of 1 and the frame length")]
    NotInFrame(String),

    #[error("tiling error: {0}")]
    Tiling(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
