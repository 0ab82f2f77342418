use thiserror::Error;

/// Errors raised by the combinatorial and algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} limited to n <= {limit}, got n = {n}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        n: usize,
    },

    #[error("expected an even size, got {0}")]
    OddSize(usize),

    #[error("rank array is not of type C")]
    NotTypeC,

    #[error("invalid rank array: {0}")]
    InvalidRankArray(String),

    #[error("permutation {0} is not defined by inclusions")]
    NotDefinedByInclusions(String),

    #[error("box ({0}, {1}) is not in the essential set")]
    NotEssential(usize, usize),

    #[error("invalid conditional independence statement: {0}")]
    InvalidStatement(String),

    #[error("statement `{0}` does not define a symmetric Schubert determinantal ideal")]
    NotSchubertStatement(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not a generalized Markov chain")]
    NotMarkovChain,

    #[error("parameter mismatch: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A theorem-level invariant failed. This signals a bug, not bad input.
    #[error("invariant violated: {0}")]
    InvariantBreach(String),
}

pub type Result<T> = std::result::Result<T, Error>;
