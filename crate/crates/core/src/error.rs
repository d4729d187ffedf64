//! Error type shared by every module of the crate.

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type.
///
/// The variants mirror the failure classes of the library: domain
/// violations, arithmetic division by the chart's zero element, non-finite
/// numerics, parse failures with a byte offset, evaluation failures inside
/// parsed expressions, and resource guards on unbounded requests.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input lies outside the domain a chart or operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Division by the arithmetic zero of the active chart.
    #[error("division by the arithmetic zero of the chart")]
    DivisionByZero,

    /// A computation produced a non-finite intermediate or result.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The input text could not be parsed; `offset` is a byte index.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A parsed expression failed to evaluate; `offset` locates the
    /// offending subexpression in the original text.
    #[error("evaluation error at byte {offset}: {message}")]
    Eval { offset: usize, message: String },

    /// A request exceeded a built-in resource guard.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    /// Shorthand for a [`Error::Numeric`] with a formatted message.
    pub(crate) fn numeric(message: impl Into<String>) -> Self {
        Error::Numeric(message.into())
    }
}
