//! Exact rational scalars and sparse multivariate polynomials.
//!
//! Variables are anonymous indices here; naming is handled by
//! [`Variables`], which higher layers fill with their own aliases.

mod monomial;
mod polynomial;
mod text;

use num::BigRational;
use thiserror::Error;

pub use monomial::{count_monomials, monomials_of_degree, Monomial};
pub use polynomial::Polynomial;
pub use text::Variables;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Parses `"3"`, `"-3/4"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: num::BigInt = num.parse().ok()?;
    let den: num::BigInt = den.parse().ok()?;
    if den <= num::BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of shape {rows}x{cols} cannot act on {nvars} variables")]
    ShapeMismatch { nvars: usize, rows: usize, cols: usize },
    #[error("variable index {var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: nonzero remainder")]
    NotDivisible { remainder: Polynomial },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
