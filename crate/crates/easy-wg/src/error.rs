use thiserror::Error;

/// Errors produced by the partition calculus and the exact integration engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("composition arity mismatch: upper({p}) = {p_upper} but lower({q}) = {q_lower}")]
    ArityMismatch {
        p: String,
        p_upper: usize,
        q: String,
        q_lower: usize,
    },

    #[error("shape mismatch: ({k1},{l1}) vs ({k2},{l2})")]
    ShapeMismatch {
        k1: usize,
        l1: usize,
        k2: usize,
        l2: usize,
    },

    #[error("rotation source row is empty")]
    EmptyRotationRow,

    #[error("partition is not a pairing: block of size {size}")]
    NotAPairing { size: usize },

    #[error("point bound exceeded: {requested} > {bound}")]
    BoundExceeded { requested: usize, bound: usize },

    #[error("multi-index invalid: {msg}")]
    BadMultiIndex { msg: String },

    #[error("matrix budget exceeded: n^(k+l) = {size} > {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("Gram matrix is singular for category {category}, k = {k}, n = {n}")]
    SingularGram {
        category: String,
        k: usize,
        n: usize,
    },

    #[error("unknown category name: {0}")]
    UnknownCategory(String),

    #[error("unknown law name: {0}")]
    UnknownLaw(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
