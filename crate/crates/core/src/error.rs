use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible inputs: {0}")]
    DomainMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} budget exceeded: requested {requested}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, requested: u128, limit: u128) -> Self {
        Error::BudgetExceeded {
            what,
            requested,
            limit,
        }
    }
}
