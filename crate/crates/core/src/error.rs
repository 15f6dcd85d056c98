use thiserror::Error;

/// Errors raised by the library.
///
/// `Invalid*` variants are caller mistakes (bad arguments, unmet
/// preconditions). `Consistency` means an exact identity that must hold
/// was violated, which only happens when there is an arithmetic bug.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("weight {0} must be even")]
    OddWeight(u32),
    #[error("precision {got} is too small, need at least {needed}")]
    Precision { needed: usize, got: usize },
    #[error("polynomial is not squarefree; deflate by gcd(P, P') first")]
    NotSquarefree,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True for failures of internal identities rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
