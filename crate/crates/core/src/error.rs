use thiserror::Error;

/// Errors raised across the library.
///
/// `Domain` marks arguments outside the mathematical domain of a function
/// (the CLI maps it to exit code 2); `Input` marks malformed requests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(
        "predicate is not monotone across [{lo}, {hi}]: holds({lo}) = {lo_holds}, holds({hi}) = {hi_holds}"
    )]
    NotMonotone {
        lo: f64,
        hi: f64,
        lo_holds: bool,
        hi_holds: bool,
    },

    #[error("unknown {kind} `{name}`; valid names: {}", valid.join(", "))]
    UnknownName {
        kind: &'static str,
        name: String,
        valid: Vec<&'static str>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// True for errors caused by arguments outside a function's domain.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
