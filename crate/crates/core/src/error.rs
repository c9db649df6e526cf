use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A real value could not be refined to the requested width.
    #[error("precision exhausted at {bits} bits (achieved width {achieved_width})")]
    PrecisionExhausted { bits: u32, achieved_width: String },

    #[error("square root of a negative interval")]
    NegativeInput,

    #[error("logarithm of a non-positive interval")]
    NonPositiveLog,

    #[error("division by an interval containing zero")]
    DivisionByZero,

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("polynomial has {count} sign changes on the search domain; unique positive root not certified")]
    AmbiguousRootCount { count: usize },

    #[error("polynomial has no positive root")]
    NoPositiveRoot,

    #[error("rounding of x0*xi^{j} for x0={x0} not resolved at {bits} bits")]
    RoundingUnresolved { x0: String, j: usize, bits: u32 },

    #[error("L values of {first} and {second} could not be separated at {bits} bits")]
    TieUnresolved {
        first: String,
        second: String,
        bits: u32,
    },

    #[error("xi has degree {degree} <= n = {n}")]
    DegenerateXi { degree: usize, n: usize },

    #[error("floor of {what} not resolved at {bits} bits")]
    FloorUnresolved { what: String, bits: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A fact guaranteed by the theory failed. Carries a reproduction payload.
    #[error("CONTRACT VIOLATION: {message}\nreproduction: {payload}")]
    ContractViolation { message: String, payload: String },
}

impl Error {
    pub fn contract(message: impl Into<String>, payload: impl Into<String>) -> Self {
        Error::ContractViolation {
            message: message.into(),
            payload: payload.into(),
        }
    }

    pub fn is_contract_violation(&self) -> bool {
        matches!(self, Error::ContractViolation { .. })
    }

    /// True for failures caused by finite working precision rather than by the mathematics.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted { .. }
                | Error::RoundingUnresolved { .. }
                | Error::TieUnresolved { .. }
                | Error::FloorUnresolved { .. }
        )
    }
}
