use thiserror::Error;

use crate::polyparse::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands belong to different variable contexts")]
    ContextMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is not homogeneous in {0}")]
    Inhomogeneous(&'static str),
    #[error("charge mismatch: {0}")]
    Charge(String),
    #[error("singular or non-complete-intersection input: {0}")]
    Singular(String),
    #[error("linear independence assumption fails: {0}")]
    Dependent(String),
    #[error("Maurer-Cartan residual is nonzero: {0}")]
    MaurerCartan(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed document: {0}")]
    Document(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
