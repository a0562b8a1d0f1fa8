use num_bigint::BigUint;
use thiserror::Error;

/// Snapshot of one prime's witnesses, attached to a [`CantorError::Disagreement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisagreementDump {
    pub p: u64,
    pub digit_oracle: bool,
    pub exponential: bool,
    pub cyclotomic: bool,
    /// Leading digits of the repetend (truncated for long periods).
    pub digits: Vec<u8>,
    pub q: Option<u64>,
    pub k: Option<BigUint>,
    pub form: Option<(u64, u32)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CantorError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),

    #[error("{0} is divisible by three")]
    DivisibleByThree(u64),

    #[error("bad interval ({lo}, {hi}): need 0 < lo < hi")]
    BadInterval { lo: u128, hi: u128 },

    #[error("bad argument: {0}")]
    BadArgument(String),

    #[error("trit budget exceeded: {needed} trits requested, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("characterizations disagree: {0:?}")]
    Disagreement(Box<DisagreementDump>),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("malformed b-file line {0}")]
    MalformedLine(usize),

    #[error("b-file index does not increase at line {0}")]
    NonMonotonicIndex(usize),
}

impl CantorError {
    /// True for errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, CantorError::Disagreement(_) | CantorError::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, CantorError>;
