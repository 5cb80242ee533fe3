//! Sieve-based and digit-based arithmetic sequences.
//!
//! [`ArithmeticFunctionTable`] holds Ω, ω, μ and the square-free indicator
//! up to a bound, produced in one linear-sieve pass. On top of it sit the
//! named indicator sets (TM, RS, EF, OF, SF, EFSF, OFSF), their increasing
//! listings, and the sampled complete-additivity / -multiplicativity checks.

mod automatic;
mod indicator;
mod laws;
mod seqspec;
mod table;

pub use automatic::{automatic_bit, AutomaticKind};
pub use indicator::{subsequence_of, IndicatorName, IndicatorSequence, Subsequence};
pub use laws::{additivity_check, additivity_check_where, multiplicativity_check, LawReport};
pub use seqspec::{sequence_values, SequenceSpec};
pub use table::{build_sieve_tables, build_sieve_tables_with_budget, ArithmeticFunctionTable};

/// Errors from sequence construction and sieving.
#[derive(Debug, thiserror::Error)]
pub enum SequenceError {
    #[error("sieve of {requested} entries exceeds memory budget of {budget} bytes")]
    Capacity { requested: u64, budget: u64 },
    #[error("max_n must satisfy 2 ≤ max_n ≤ 2^32, got {0}")]
    BadRange(u64),
    #[error("unknown indicator name: {0}")]
    UnknownIndicator(String),
    #[error("indicator {0} has no members")]
    EmptyIndicator(String),
    #[error("requested {requested} values but only {available} are available")]
    TooShort { requested: u64, available: u64 },
    #[error("polynomial evaluation overflowed 64 bits at n={0}")]
    PolyOverflow(u64),
    #[error("sequence file {path}: {reason}")]
    BadFile { path: String, reason: String },
}
