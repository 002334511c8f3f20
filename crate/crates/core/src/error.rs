use alloc::string::String;
use core::fmt;

use crate::exactmath::Rat;

/// Errors surfaced by the exact engine.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Division by the zero rational.
    DivisionByZero,
    /// Inverse of the zero field element.
    InverseOfZero,
    /// `lucas_nonzero` called with `n > i`.
    BinomialOutOfRange { i: u64, n: u64 },
    /// Polynomial division by a non-monic divisor.
    NonMonicDivisor,
    /// `(n, i)` is not a member of the index set `S`.
    IndexNotInS { n: u32, i: u64 },
    /// A comparison or equality test could not be certified within caps.
    /// Carries the best certified lower bound reached.
    Uncertified { bound: Rat, context: String },
    /// A witness search ran out of budget.
    BudgetExhausted { what: String },
    /// A constructor precondition failed (e.g. `gamma <= mu(phi)`).
    Precondition(String),
    /// Internal consistency violation; indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InverseOfZero => write!(f, "inverse of zero field element"),
            Error::BinomialOutOfRange { i, n } => {
                write!(f, "binomial C({i},{n}) out of range: n > i")
            }
            Error::NonMonicDivisor => write!(f, "polynomial division requires a monic divisor"),
            Error::IndexNotInS { n, i } => write!(f, "({n},{i}) is not in the index set S"),
            Error::Uncertified { bound, context } => {
                write!(f, "uncertified result in {context}; certified only >= {bound}")
            }
            Error::BudgetExhausted { what } => write!(f, "budget exhausted: {what}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}
