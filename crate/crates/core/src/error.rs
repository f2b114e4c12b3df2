//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("negative power of a non-unit: exact division failed after clearing denominators")]
    NegativeExponentOnNonUnit,
    #[error("samples are not explained by a polynomial count: {0}")]
    NotPolynomialCount(String),
    #[error("interpolation produced non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("word is not reduced: failure at position {position}")]
    NotReduced { position: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("algebra is not finite-dimensional within path-length bound {0}")]
    NotFiniteDimensional(usize),
    #[error("module is not in the category: {0}")]
    NotInCategory(String),
    #[error("module is not in C_w: {0}")]
    NotInCw(String),
    #[error("summands {0} and {1} are isomorphic")]
    SummandsIsomorphic(usize, usize),
    #[error("prime {0} is bad for this data")]
    BadPrime(u64),
    #[error("exponent out of range: {0}")]
    OutOfRange(String),
    #[error("expected a monomial, got {0}")]
    NotAMonomial(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("inverse of the Hom-dimension matrix is not integral")]
    NonIntegralInverse,
    #[error("unsupported algebra class: {0}")]
    UnsupportedAlgebraClass(String),
    #[error("unknown scenario {0}")]
    UnknownScenario(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
