use thiserror::Error;

/// Errors surfaced by constructors, the verifier, and the prover.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimsMismatch(String),

    #[error("unsupported dimensions: {0}")]
    UnsupportedDims(String),

    #[error("states {0:?} and {1:?} are not orthogonal")]
    NonOrthogonal(String, String),

    #[error("duplicate state label {0:?}")]
    DuplicateLabel(String),

    #[error("index {idx:?} out of bounds for dims {dims:?}")]
    IndexOutOfBounds {
        idx: (u32, u32, u32),
        dims: (u32, u32, u32),
    },

    #[error("zero ket cannot be classified")]
    ZeroKet,

    #[error("plane-structure collision at row {row} col ({c1},{c2}): {a:?} vs {b:?}")]
    SlotCollision {
        row: u32,
        c1: u32,
        c2: u32,
        a: String,
        b: String,
    },

    #[error("modular elimination requires distinct primes > 3, got {0}")]
    BadPrime(u64),

    #[error("invalid state set: {0}")]
    InvalidSet(String),

    #[error("deduction rule precondition not met: {0}")]
    RulePrecondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
