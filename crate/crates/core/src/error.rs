use std::fmt;

use thiserror::Error;

/// A syntax error at a byte offset of some input text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    pub fn new(input: &str, offset: usize, expected: &str) -> Self {
        ParseError {
            input: input.to_string(),
            offset,
            expected: expected.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "in `{}` at offset {}: expected {}",
            self.input, self.offset, self.expected
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("map does not respect the relations of its source: {0}")]
    IllFormedMap(String),
    #[error("monoid has an absorbing element; use the quotient group instead")]
    PointedMonoid,
    #[error("monoid ideal contains a unit")]
    ImproperIdeal,
    #[error("monoid is not integral")]
    NotIntegral,
    #[error("group completion has torsion; saturation is only tested for torsion-free completions")]
    TorsionCompletion,
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("sequence is not minimal: {minimal} minimal generators for {given} elements")]
    NotMinimal { minimal: usize, given: usize },
    #[error("monoid map is not surjective")]
    NotSurjective,
    #[error("rings are over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
