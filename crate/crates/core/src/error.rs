use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value left the range of the fixed-width public integer types.
    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("malformed homomorphism: {0}")]
    MalformedHom(String),

    #[error("subgroup is not contained in the ambient group: {0}")]
    NotContained(String),

    #[error("result is not a finite group (free rank {0})")]
    NotFinite(usize),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unknown named group `{0}`")]
    UnknownGroup(String),

    #[error("group too large for {what}: {detail}")]
    TooLarge { what: &'static str, detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The configuration contradicts the exact sequence; signals a wrong configuration.
    #[error("inconsistent configuration: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
