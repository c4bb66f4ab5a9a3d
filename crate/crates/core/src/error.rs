//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a divisor in {0}: divisor is constant in that variable")]
    NotADivisor(String),

    #[error("no leader: polynomial is constant")]
    NoLeader,

    #[error("trivial ideal: the system reduces to 1")]
    TrivialIdeal,

    #[error("input does not characterize: {0}")]
    NotCharacterizable(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("incompatible rings: operands belong to different differential rings")]
    RingMismatch,

    #[error("ranking is not a partition of the indeterminates: {0}")]
    BadRanking(String),

    #[error("monomial order does not eliminate the discarded variables")]
    NotEliminating,

    #[error("step limit exceeded ({0} steps); raise DIFFCHAR_MAX_STEPS")]
    StepLimit(u64),

    #[error("unsupported in a partial (non-ordinary) ring: {0}")]
    OrdinaryOnly(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
