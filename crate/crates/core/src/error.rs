use thiserror::Error;

use crate::complex::ComplexViolation;
use crate::sheaf::SheafViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    InvalidField(u32),

    #[error("invalid complex: {}", join(.0))]
    InvalidComplex(Vec<ComplexViolation>),

    #[error("invalid sheaf: {}", join(.0))]
    InvalidSheaf(Vec<SheafViolation>),

    #[error("invalid sheaf morphism: {}", join(.0))]
    InvalidMorphism(Vec<SheafViolation>),

    #[error("unknown simplex {0}")]
    UnknownSimplex(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("vertex map does not send {0} onto a simplex of the target")]
    NotSimplicial(String),

    #[error("map is not an inclusion: {0}")]
    NotInclusion(String),

    #[error("diagram not free at {simplex}, step {step}")]
    NotFree { simplex: String, step: usize },

    #[error("unicolored pipeline needs at most 2 labels, got {0}")]
    TooManyLabels(usize),

    #[error("vector not in the span of the given basis ({0})")]
    NotInSpan(String),

    #[error("non-commutative square at {0}")]
    NonCommutative(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
