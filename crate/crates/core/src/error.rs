//! Error type shared by every module.

use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// An interval endpoint or table entry lies outside the admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("key {0} is not in the translation table")]
    MissingKey(Rational),

    #[error("undefined index: no approximation term satisfies the query {0}")]
    UndefinedIndex(Rational),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}
