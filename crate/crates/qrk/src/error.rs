use crate::field::FieldSpec;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error("singular matrix where an invertible one is required")]
    Singular,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("quiver mismatch: {0}")]
    QuiverMismatch(String),

    #[error("quiver is not connected")]
    Disconnected,

    #[error("enumeration budget exceeded: needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
