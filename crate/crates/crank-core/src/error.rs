//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A partition contained a zero part.
    #[error("partition parts must be positive, found 0")]
    ZeroPart,

    /// Brute-force enumeration was asked for an `n` above the configured cap.
    #[error("n = {n} exceeds the brute-force enumeration cap {cap}")]
    EnumerationCap { n: u64, cap: u64 },

    /// A table identity failed at construction time.
    #[error("table invariant violated at n = {n}: {identity}")]
    InvariantViolation { n: u64, identity: String },

    /// A cache file could not be parsed.
    #[error("malformed table cache (line {line}): {message}")]
    MalformedCache { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Requested range is not covered by the table (or by the operation's
    /// structural bounds such as needing `n-1` and `n+2` inside the table).
    #[error("range [{from}, {to}] not covered (valid range is [{min}, {max}])")]
    RangeNotCovered {
        from: u64,
        to: u64,
        min: u64,
        max: u64,
    },

    /// `Y_k(n)` was requested where `M_k(n) = 0`.
    #[error("Y_{k}({n}) is undefined: M_{k}({n}) = 0")]
    ZeroDenominator { n: u64, k: u8 },

    /// Reciprocity requires coprime arguments.
    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: u64, k: u64 },

    /// The hypothesis of a theorem is certainly violated at `n`.
    #[error("hypothesis not met at n = {n}: requires {hypothesis}")]
    HypothesisNotMet { n: u64, hypothesis: String },

    /// The hypothesis could not be decided at the working precision.
    /// Callers running a precision-escalation loop treat this as "retry".
    #[error("hypothesis undecided at n = {n} at {precision} bits: {hypothesis}")]
    HypothesisUndecided {
        n: u64,
        hypothesis: String,
        precision: u32,
    },

    /// A ceiling could not be resolved within the precision-doubling cap.
    #[error("ceiling of threshold expression unresolved for d = {d} after {doublings} doublings")]
    IndeterminateCeiling { d: u64, doublings: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
