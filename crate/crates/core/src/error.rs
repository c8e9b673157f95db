use thiserror::Error;

/// Errors raised by the exact calculus routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    /// A sequence factor `n_psi` vanished (or is undefined) at index `n`.
    #[error("admissibility violated at n = {n}: {detail}")]
    Admissibility { n: usize, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// Argument outside the support of a table-backed lattice function.
    #[error("argument {arg} outside the range {range}")]
    Range { arg: i64, range: String },

    /// Hahn parameters with `q = 1` and `h = 0` give an identically zero denominator.
    #[error("degenerate Hahn parameters: q = 1 and h = 0")]
    DegenerateParams,

    #[error("series did not reach the tail tolerance within {cap} terms")]
    Convergence { cap: usize },

    /// Broken internal invariant. Never a user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = CalcError> = std::result::Result<T, E>;

/// Failure to parse a rational, polynomial expression or psi-spec.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    pub fn new(offset: usize, expected: impl Into<String>) -> Self {
        ParseError {
            offset,
            expected: expected.into(),
        }
    }
}
