//! Exact scalar-field arithmetic on coordinate charts.
//!
//! A [`ScalarField`] is a multivariate rational function over arbitrary-precision
//! rationals, kept in a canonical form (reduced fraction, monic denominator under
//! the graded-lex order) so that structural equality decides identity of functions.

mod chart;
mod error;
pub mod lex;
mod monomial;
mod parse;
mod point;
mod polynomial;
mod scalar;

pub use chart::Chart;
pub use error::Error;
pub use monomial::Monomial;
pub use parse::parse_scalar;
pub use point::{Point, PointValue};
pub use polynomial::Polynomial;
pub use scalar::ScalarField;

/// Arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;
pub type BigInt = num_bigint::BigInt;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
