use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on labels, weights or shapes was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured rank or degree budget was exceeded.
    #[error("resource limit: {what} (limit {limit}, requested {requested})")]
    ResourceLimit {
        what: String,
        limit: usize,
        requested: usize,
    },

    /// Greedy extraction met a leading term that cannot come from a genuine character.
    #[error("not a character: leading exponent {exponent:?} has coefficient {coefficient}")]
    NotACharacter {
        exponent: Vec<i64>,
        coefficient: String,
    },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("no K-type oracle for {0}")]
    NoKTypeOracle(String),

    /// The request belongs to a different theorem.
    #[error("{reason}; use {route} instead")]
    Routed { reason: String, route: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
