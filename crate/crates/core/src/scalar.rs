//! Coefficient abstractions shared by the polynomial types.
//!
//! Everything exact runs over [`Rational`](crate::Rational) (or big integers
//! during elimination); the floating types only back the damped-Newton
//! fiber search.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, ToPrimitive};

/// A commutative ring element usable as a polynomial coefficient.
pub trait Scalar:
    NumRef + NumAssignRef + Clone + Debug + PartialEq + Neg<Output = Self> + Send + Sync + 'static
{
    fn to_f64_lossy(&self) -> f64;
}

/// Division in `Self` is exact field division.
pub trait Field: Scalar {}

impl Scalar for BigInt {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Field for BigRational {}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
        impl Field for $t {}
    )*};
}

float_scalar!(f32, f64);

/// Nearest-ish `f64` for a rational with arbitrarily large parts.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Shift both parts down to 60 significant bits before dividing.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let nf = (n >> ns as usize).to_f64().unwrap_or(0.0);
    let df = (d >> ds as usize).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi((ns - ds).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}
