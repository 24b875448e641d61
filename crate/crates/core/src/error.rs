use thiserror::Error;

/// Failure to parse a polynomial, rational or line literal.
///
/// `column` is a 1-based character offset into the input (0 when unknown).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("interval does not isolate a root of the polynomial")]
    NotIsolating,
    #[error("degenerate line: a and b must both be nonzero")]
    DegenerateLine,
    #[error("invalid exponent tuple: {0}")]
    InvalidExponents(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refinement cap reached: {0}")]
    RefinementCap(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
