//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("{0}")]
    InvalidInput(String),
    #[error("arrangement is decomposable")]
    Decomposable,
    #[error("arrangement is not essential")]
    NotEssential,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("operator contains the variable s where an s-free operator is required")]
    SNotAllowed,
    #[error("perturbation search exhausted its schedule")]
    PerturbationFailed,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code the command line tool maps this error to.
    /// Parse and input-format problems exit 2, violated preconditions exit 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::DimensionMismatch(_) => 2,
            _ => 3,
        }
    }
}
