use thiserror::Error;

use crate::algebra::MAX_EXPONENT;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("coefficient {value} is not invertible over {field}")]
    NotInvertible { value: String, field: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid ring signature: {0}")]
    InvalidRing(String),

    #[error("exponent {0} exceeds the limit of {MAX_EXPONENT}")]
    ExponentLimit(u64),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("reduction budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("unit ideal: {0}")]
    UnitIdeal(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("requires positive characteristic: {0}")]
    CharacteristicZero(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("refuted: {0}")]
    Refuted(String),
}

impl Error {
    /// Prefixes the message of string-carrying variants with `ctx`.
    pub fn context(self, ctx: &str) -> Error {
        let pre = |s: String| format!("{ctx}: {s}");
        match self {
            Error::UnitIdeal(s) => Error::UnitIdeal(pre(s)),
            Error::NotHomogeneous(s) => Error::NotHomogeneous(pre(s)),
            Error::Inconclusive(s) => Error::Inconclusive(pre(s)),
            Error::CharacteristicZero(s) => Error::CharacteristicZero(pre(s)),
            Error::Hypothesis(s) => Error::Hypothesis(pre(s)),
            Error::InvalidArgument(s) => Error::InvalidArgument(pre(s)),
            Error::Precondition(s) => Error::Precondition(pre(s)),
            Error::Refuted(s) => Error::Refuted(pre(s)),
            other => other,
        }
    }
}
