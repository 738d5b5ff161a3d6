use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A matrix or graph lacks a structural property (irreducibility,
    /// aperiodicity) the operation relies on.
    #[error("structural error: {0}")]
    Structural(String),

    /// A word is too short to determine the requested quantity.
    #[error("insufficient context: need {needed} symbols, word has {available}")]
    InsufficientContext { needed: usize, available: usize },

    /// A configured work budget ran out. `partial` holds whatever had been
    /// accumulated when the budget was hit.
    #[error("{what} budget of {limit} exceeded (partial value {partial})")]
    Budget {
        what: &'static str,
        limit: u64,
        partial: f64,
    },

    /// The sample is too coarse for the requested scale.
    #[error("sample resolution {resolution} is too coarse for scale {scale} (limit {limit})")]
    Inadequate {
        resolution: f64,
        scale: f64,
        limit: f64,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
