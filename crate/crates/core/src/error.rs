use crate::algebra::render::ParseError;
use crate::algebra::SeriesError;

/// Errors raised by the computation engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("shuffle sum is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("polynomial is not invariant under the symmetric groups of {0}")]
    NotInvariant(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("z = 0 is a pole of the localized product")]
    PoleAtZero,
    #[error("input is not homogeneous")]
    NonHomogeneous,
    #[error("zero-weight factor in a weighted complex")]
    ZeroWeight,
    #[error("reduction failure: {0}")]
    ReductionFailure(String),
    #[error("q-degree is unbounded below on the requested range: {0}")]
    DivergentRange(String),
    #[error("window [{lo}, {hi}] does not contain the leading power {lead}")]
    WindowInsufficient { lo: i64, hi: i64, lead: i64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
