use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A composite cofactor resisted the configured factoring effort.
    #[error("factorization limit exceeded: cofactor {cofactor} not split within effort {effort}")]
    FactorizationLimitExceeded { cofactor: BigInt, effort: u64 },

    /// The incremental prime scan hit its configured bound.
    #[error("search limit exceeded: no prime ≡ {residue} (mod {modulus}) within {scanned} candidates")]
    SearchLimitExceeded {
        residue: BigInt,
        modulus: BigInt,
        scanned: u64,
    },

    /// CRT input congruences contradict each other.
    #[error("inconsistent congruences: {0} and {1} disagree on their common modulus")]
    InconsistentCongruence(String, String),

    /// A matrix with zero determinant was offered where a nondegenerate form is required.
    #[error("degenerate form: determinant is zero")]
    DegenerateForm,

    /// Attempt to peel a hyperbolic plane off a form of rank below 2.
    #[error("rank underflow: cannot peel a hyperbolic plane off a rank-{0} form")]
    RankUnderflow(usize),

    /// The solvability oracle's search space exceeds its configuration.
    #[error("oracle search space too large: {0}")]
    OracleTooLarge(String),

    /// An operation's stated precondition does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
