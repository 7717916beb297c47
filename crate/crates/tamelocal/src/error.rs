//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the computation modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Text input failed to parse. Position is a byte offset into the input.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A variable outside the supported tower appeared in polynomial text.
    #[error("unknown variable '{0}' (expected one of s, t, x)")]
    UnknownVariable(char),

    /// Cycle notation did not describe a permutation of {{1..n}}.
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    /// Generator closure exceeded the configured size cap.
    #[error("group too large: closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },

    /// Group order exceeds the cap for exhaustive enumeration.
    #[error("group of order {order} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { order: usize, cap: usize },

    /// A Cayley table failed the identity/inverse/associativity audit.
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    /// Unknown name passed to the group catalog.
    #[error("unknown group name '{0}'")]
    UnknownGroupName(String),

    /// An operation was called outside its stated domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// {0} is not prime but a prime was required.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Tame-quotient criteria do not apply when the prime divides the
    /// ramification index.
    #[error("wild prime: {q} divides e = {e}; undecidable by the tame criterion")]
    WildPrime { q: u64, e: u64 },

    /// Zero input where a nonzero value is required.
    #[error("zero input: {0}")]
    ZeroInput(String),

    /// Complete integer factorization did not finish within the budget.
    #[error("factorization budget exceeded on a {digits}-digit cofactor")]
    FactorBudget { digits: usize },

    /// Isotropic-vector search ran out of budget without deciding anything.
    #[error("witness not found within search budget (bound {bound})")]
    SearchBudget { bound: i64 },

    /// The input square classes are linearly dependent over F2.
    #[error("dependent square classes: the five classes span rank {rank} < 5")]
    DependentClasses { rank: usize },

    /// A specialization landed on the branch locus.
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),

    /// Coefficients too large for the fixed-width witness search.
    #[error("coefficient overflow in witness search")]
    Overflow,

    /// Two code paths that must agree disagreed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
