use std::fmt;

use thiserror::Error;

/// Coarse classification of every failure the library can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Resource,
    RegularizationFailure,
    Internal,
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorClass::Input => "input",
            ErrorClass::Resource => "resource",
            ErrorClass::RegularizationFailure => "regularization-failure",
            ErrorClass::Internal => "internal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message} (expected {expected})")]
    Parse {
        position: usize,
        message: String,
        expected: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("no regularized value (pole at t=1)")]
    PoleAtOne,
    #[error("no linear recurrence of order <= {max_order} verifies against {terms} terms")]
    NoRecurrence { max_order: usize, terms: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::Unsupported(_) => {
                ErrorClass::Input
            }
            Error::ResourceLimit(_) => ErrorClass::Resource,
            Error::PoleAtOne | Error::NoRecurrence { .. } => ErrorClass::RegularizationFailure,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
