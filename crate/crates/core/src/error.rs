use thiserror::Error;

/// Errors raised by the recurrence toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates an operation precondition.
    #[error("{0}")]
    InvalidArgument(String),

    /// Backtracking towards the fundamental starting values did not stop.
    #[error("backtracking did not reach q - a*p < 0 within {steps} steps")]
    BacktrackDiverged { steps: u64 },

    /// A radicand that the addition identities require to be square is not.
    #[error("radicand {radicand} is not a perfect square")]
    NotPerfectSquare { radicand: String },

    /// The identity produced an odd numerator where an exact halving is required.
    #[error("identity numerator {numerator} is not divisible by 2")]
    OddNumerator { numerator: String },

    /// Two ring elements belong to different rings.
    #[error("ring mismatch: a = {lhs} vs a = {rhs}")]
    RingMismatch { lhs: String, rhs: String },

    /// Requested work exceeds the configured budget.
    #[error("{what} needs {requested} units of work, budget allows {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
