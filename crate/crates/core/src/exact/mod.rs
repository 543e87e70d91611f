//! Exact arithmetic: rationals, sparse polynomials, and dense rational
//! linear algebra.

mod matrix;
mod monomial;
mod parse;
mod poly;

pub use matrix::{det_poly_matrix, RationalMatrix};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_lines};
pub use poly::{default_pivot, Polynomial};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat2(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses an integer or `p/q` literal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.parse().ok()?;
            let d: num_bigint::BigInt = d.parse().ok()?;
            (d != 0.into()).then(|| Rational::new(n, d))
        }
        None => s.parse().ok().map(Rational::from_integer),
    }
}
