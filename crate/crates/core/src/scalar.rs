//! Exact field arithmetic over the rationals.
//!
//! Every computation in this crate runs over `Scalar`, an arbitrary-precision
//! rational that is always stored reduced and with a positive denominator.
//! There is no floating point anywhere: subspace comparisons, eigenvalue
//! searches and theorem checks are all exact, so "equal" means equal.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;
use thiserror::Error;

/// An exact rational number. Reduced form with positive denominator is
/// maintained by construction.
pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not a valid rational literal")]
    BadLiteral(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Parse a rational literal of the form `p` or `p/q` (e.g. `-3/2`, `7`).
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let (num_text, den_text) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let numer = BigInt::from_str(num_text)
        .map_err(|_| ScalarParseError::BadLiteral(trimmed.to_string()))?;
    let denom = match den_text {
        Some(d) => {
            BigInt::from_str(d).map_err(|_| ScalarParseError::BadLiteral(trimmed.to_string()))?
        }
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(ScalarParseError::ZeroDenominator(trimmed.to_string()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Shorthand for an integer scalar.
pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Shorthand for the fraction `numer/denom`. Panics on a zero denominator,
/// so it is only suitable for literals.
pub fn frac(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
