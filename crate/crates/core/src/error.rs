use thiserror::Error;

use crate::info::Base;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown axis `{0}`")]
    UnknownAxis(String),

    #[error("unit mismatch: expected {expected:?}, found {found:?}")]
    BaseMismatch { expected: Base, found: Base },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration support of {support} states exceeds limit {limit}")]
    SupportTooLarge { support: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_prob(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            value,
            domain: "[0, 1]",
        })
    }
}
