use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed numerical input to a Gaussian-state operation.
    #[error("validation error: {0}")]
    Validation(String),
    /// Physical parameters outside the model's domain of validity.
    #[error("domain error: {0}")]
    Domain(String),
    /// A model-produced object violated an invariant it must satisfy.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    /// The moment-propagation oracle produced an unusable result.
    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
