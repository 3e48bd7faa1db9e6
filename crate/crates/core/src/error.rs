use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,

    #[error("operands belong to different scalar backends ({0} vs {1})")]
    MixedBackends(String, String),

    #[error("{0} is not a supported prime (need a prime 2 <= p < 2^31)")]
    NotPrime(u64),

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("zero forms cannot be used as ideal generators")]
    ZeroGenerator,

    #[error("variable count mismatch: expected {expected}, got {got}")]
    VariableCountMismatch { expected: usize, got: usize },

    #[error("quotient is not confirmed Artinian up to degree {t_max}")]
    NotArtinian { t_max: usize },

    #[error("{check} expects {expected} degrees, got {got}")]
    InvalidArity {
        check: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linked Hilbert function is negative at degree {t} ({value})")]
    NegativeLinkedValue { t: usize, value: i64 },

    #[error("form vanishes at point {index} of the zeroscheme")]
    FormVanishesAtPoint { index: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
