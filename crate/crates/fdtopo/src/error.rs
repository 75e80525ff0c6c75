use thiserror::Error;

/// Errors surfaced by schema analysis operations.
///
/// `InvalidInput` covers contract violations (mismatched universes, out-of-range
/// attributes, malformed covers or trees). `BudgetExceeded` is reserved for
/// operations with worst-case exponential cost that were given an explicit
/// resource budget.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("attribute sets belong to different universes")]
    UniverseMismatch,

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("resource budget exceeded: {needed} {unit} needed, budget is {budget}")]
    BudgetExceeded {
        needed: u128,
        budget: u128,
        unit: &'static str,
    },

    #[error("operation undefined on an empty complex")]
    EmptyComplex,
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True when the error is a resource budget overflow rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
