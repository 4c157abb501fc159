//! Shared error type for parsing, counting, and search.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text is not a valid word. `position` is 1-based and points at
    /// the offending character.
    #[error("invalid word at position {position}: {reason}")]
    Parse { position: usize, reason: String },

    /// An exact count does not fit in [`crate::Count`].
    #[error("count exceeds the 64-bit range")]
    Overflow,

    /// Enumeration would produce more elements than the caller allowed.
    #[error("enumeration cap {cap} exceeded: the set holds {size} elements")]
    CapExceeded { cap: u64, size: u64 },

    /// A brute-force routine was asked for a word longer than its limit.
    #[error("word length {len} exceeds the brute-force limit {max}")]
    LengthExceeded { len: usize, max: usize },

    /// Arguments outside an operation's domain.
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// An exhaustive search was asked to exceed its length budget.
    #[error("search budget exceeded: n = {requested} is above the budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
