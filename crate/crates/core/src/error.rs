use thiserror::Error;

/// Everything that can go wrong short of a law failure.
///
/// Law failures are not errors: checkers return a [`crate::report::LawReport`]
/// carrying a counterexample. `Error` covers structural problems (mismatched
/// domains, missing components) and resource limits (size caps, enumeration
/// budgets), which the caller must be able to tell apart from a refuted law.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("constructed set would have {size} elements, exceeding the size cap {cap}")]
    SizeCap { size: u128, cap: usize },

    #[error("{context}: expected {expected}, found {found}")]
    Mismatch {
        context: String,
        expected: String,
        found: String,
    },

    #[error("duplicate label {label:?} in set")]
    DuplicateLabel { label: String },

    #[error("table entry {value} at position {position} out of range for codomain of size {cod}")]
    BadEntry {
        position: usize,
        value: usize,
        cod: usize,
    },

    #[error("table has {found} entries but domain has {expected}")]
    BadLength { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing component at {0}; extend the universe so the lookup succeeds")]
    MissingComponent(String),

    #[error("enumeration budget exceeded: estimated {estimate} candidates against budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn mismatch(context: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        Error::Mismatch {
            context: context.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
