//! Exact arithmetic: rationals, Gaussian rationals, Laurent polynomials and
//! rational functions in the half-power variable `s` (with `q = s²`), and
//! quantum integers.
//!
//! Everything symbolic stays over ℚ. Gaussian rationals only show up when a
//! rational function is evaluated at a point such as `s = i` (that is,
//! `q = -1`).

mod gaussian;
mod laurent;
mod parse;
mod ratfunc;

pub use gaussian::GaussianRational;
pub use laurent::{quantum_integer, LaurentPoly};
pub use ratfunc::{Evaluation, RationalFunction};

use thiserror::Error;

/// Arbitrary-precision rational number, always kept reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point s = 0 is not allowed (s is invertible)")]
    ZeroEvaluationPoint,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Shorthand for the rational `n / d`.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
