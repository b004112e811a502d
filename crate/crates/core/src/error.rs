use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The operation is only defined off the dyadic grid.
    #[error("{0} is dyadic; this operation needs a non-dyadic point")]
    DyadicPoint(String),

    /// The operation is only defined on the dyadic grid.
    #[error("{0} is not dyadic")]
    NotDyadic(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
