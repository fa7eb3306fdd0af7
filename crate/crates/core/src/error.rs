use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported field parameters t={t}, a={a}")]
    UnsupportedField { t: u64, a: u32 },

    #[error("unsupported group parameter: {0}")]
    UnsupportedGroup(String),

    #[error("enumeration ceiling exceeded: group of order {order} > ceiling {ceiling}")]
    CeilingExceeded { order: u128, ceiling: usize },

    #[error("element does not belong to the group")]
    NotInGroup,

    #[error("unknown module label `{0}`")]
    UnknownModule(String),

    #[error("invalid classification case: {0}")]
    InvalidCase(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("character degree computation failed: {0}")]
    Degrees(String),
}

pub type Result<T> = std::result::Result<T, Error>;
