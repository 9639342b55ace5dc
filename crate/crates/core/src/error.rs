use thiserror::Error;

use crate::cyclic::CyclicWord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is outside the supported range 2..=36")]
    InvalidAlphabet(usize),

    #[error("symbol {symbol} is not in the alphabet of size {k}")]
    InvalidSymbol { symbol: usize, k: usize },

    #[error("word of length {len} is too short; at least {needed} symbols are required")]
    WordTooShort { len: usize, needed: usize },

    #[error("alphabet mismatch: {left} symbols vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },

    /// The exhaustive enumeration would touch `required` items, over the budget.
    /// `required` saturates at `u128::MAX`.
    #[error("exhaustive check needs {required} items, budget is {budget}")]
    ExhaustiveCheckInfeasible { required: u128, budget: u64 },

    #[error("rule table has {found} entries, expected {expected}")]
    TableLength { found: usize, expected: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("the source cellular automaton is surjective, so it has no diamond to erase")]
    SourceIsSurjective,

    #[error("a non-identity bijection is not a product of idempotents")]
    NotDecomposable,

    #[error("period {period}: the map sends Q_{period} onto itself without fixing {witness}")]
    ConditionViolated { period: usize, witness: CyclicWord },

    #[error("map is not shift-equivariant at carrier point {0}")]
    NotEquivariant(CyclicWord),

    #[error("search gave up after {0} candidates")]
    SearchBudgetExceeded(u64),

    #[error("no capacity threshold found for lengths up to {0}")]
    NoThresholdFound(usize),

    #[error("word length {len} is below the capacity threshold {threshold}")]
    LengthBelowThreshold { len: usize, threshold: usize },

    #[error("malformed block: {0}")]
    MalformedBlock(String),

    #[error("word contains the forbidden word {0}")]
    ContainsForbidden(String),

    #[error("rank arithmetic overflows 128 bits at length {0}")]
    RankOverflow(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by the exhaustiveness cap rather than bad input.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::ExhaustiveCheckInfeasible { .. }
                | Error::SearchBudgetExceeded(_)
                | Error::NoThresholdFound(_)
                | Error::RankOverflow(_)
        )
    }
}
