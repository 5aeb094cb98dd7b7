use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Factorization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The step budget ran out. `partial` holds the prime factors found so far
    /// and `remaining` the unfactored cofactor.
    #[error("factoring failed: budget exhausted with unfactored cofactor {remaining}")]
    FactoringFailed {
        partial: Factorization,
        remaining: BigUint,
    },

    #[error("{count} results exceed the cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },

    #[error("modulus {n} exceeds the brute-force limit of {limit}")]
    LimitExceeded { n: BigUint, limit: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
