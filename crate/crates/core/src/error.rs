use alloc::string::String;

use crate::parser::ParseError;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("expected a nonzero value")]
    ZeroInput,
    #[error("{0} is not a prime greater than 3")]
    InvalidPrime(u64),
    #[error("trial division bound {bound} exceeded while factoring")]
    FactorBoundExceeded { bound: u64 },
    #[error("element does not have norm 1")]
    NormNotOne,
    #[error("quadratic extension elements have different radicands")]
    RadicandMismatch,
    #[error("radicand is a square in the base field")]
    SquareRadicand,
    #[error("both polynomials are zero")]
    ZeroPolynomials,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("denominator is not invertible modulo the given polynomial")]
    NotInvertible,
    #[error("map has degree {0}, expected 2")]
    DegreeNotTwo(usize),
    #[error("numerator and denominator share a root")]
    Degenerate,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("operation requires automorphism class {expected}, map has {found}")]
    WrongAutClass {
        expected: &'static str,
        found: &'static str,
    },
    #[error("moduli point lies on the symmetry locus")]
    OnSymmetryLocus,
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(String),
    #[error("arguments live over different base fields")]
    FieldMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("maps have different multiplier invariants")]
    SigmaMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
