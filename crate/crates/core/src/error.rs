use thiserror::Error;

/// Errors raised by ring construction, map verification and the Ore kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid ring or map parameters (non-prime characteristic, zero truncation, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// The operation needs an enumerable ring (or some other capability) the input lacks.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A checked precondition did not hold. `witness` names the offending values.
    #[error("precondition violated: {what}{}", witness.as_ref().map(|w| format!(" (witness: {w})")).unwrap_or_default())]
    Precondition {
        what: String,
        witness: Option<String>,
    },

    /// Caller misuse: mismatched contexts, indices out of range.
    #[error("usage error: {0}")]
    Usage(String),

    /// An identity that must hold by construction failed. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness: None,
        }
    }

    pub fn precondition_with(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness: Some(witness.into()),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
