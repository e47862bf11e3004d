use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured enumeration or factorization budget was exceeded.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: String,
        cap: String,
    },

    /// Factorization gave up; `partial` lists the factors found so far and
    /// `cofactor` the unfactored remainder.
    #[error("factorization budget exhausted for {cofactor} (found {partial:?})")]
    FactorizationBudget {
        partial: Vec<String>,
        cofactor: String,
    },

    /// `P_m(q) = 1`, so no primitive prime divisor exists.
    #[error("P_{m}({q}) = 1 has no prime divisor")]
    NoPrimitivePrime { m: u64, q: u64 },

    /// An exactness guarantee failed; indicates a bug rather than bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn resource(what: impl Into<String>, needed: impl ToString, cap: impl ToString) -> Self {
        Error::Resource {
            what: what.into(),
            needed: needed.to_string(),
            cap: cap.to_string(),
        }
    }
}
