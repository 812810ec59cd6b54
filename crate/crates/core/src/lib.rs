//! Exact polynomial arithmetic, certified real solving and claim checking for
//! non-injective planar polynomial maps with non-vanishing Jacobian.
//!
//! The crate is generic over the coefficient type where the math allows it
//! ([`Polynomial`], [`UPoly`], [`Interval`]); the certified layers
//! ([`realroots`], [`systems`], [`certify`], [`ratfunc`]) are pinned to exact
//! rationals through the aliases below.

pub mod certify;
pub mod claims;
pub mod interval;
pub mod maps;
pub mod parser;
pub mod poly;
pub mod ratfunc;
pub mod realroots;
pub mod scalar;
pub mod systems;

pub use interval::{Interval, IntervalBox};
pub use poly::{Monomial, Polynomial, UPoly, Var};
pub use scalar::{Field, Scalar};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Exact multivariate polynomial over the rationals.
pub type Poly = Polynomial<Rational>;
/// Multivariate polynomial with `f64` coefficients (numeric search only).
pub type FloatPoly = Polynomial<f64>;
/// Exact dense univariate polynomial over the rationals.
pub type RatUPoly = UPoly<Rational>;
/// Dense univariate polynomial over the integers.
pub type IntUPoly = UPoly<Integer>;
/// Closed interval with rational endpoints.
pub type RatInterval = Interval<Rational>;
/// Axis-aligned box with rational endpoints.
pub type RatBox = IntervalBox<Rational>;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`, reduced. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
