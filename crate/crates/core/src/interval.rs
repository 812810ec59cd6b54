//! Closed intervals and boxes with exact endpoints.
//!
//! Arithmetic is exact on the endpoints, so with [`Rational`](crate::Rational)
//! endpoints every operation satisfies the inclusion property without
//! outward rounding. Float instantiations carry no such guarantee.

use std::fmt;

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar + PartialOrd> Interval<T> {
    /// `None` when `lo > hi`.
    pub fn new(lo: T, hi: T) -> Option<Self> {
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    /// Builds the interval spanned by two endpoints in either order.
    pub fn spanning(a: T, b: T) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(v: T) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        Self::point(T::zero())
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn into_bounds(self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> T {
        self.hi.clone() - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &T) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    /// Whether `other` lies inside `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi >= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    /// Largest absolute value attained on the interval.
    pub fn magnitude(&self) -> T {
        let a = abs(&self.lo);
        let b = abs(&self.hi);
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() + &other.lo,
            hi: self.hi.clone() + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() - &other.hi,
            hi: self.hi.clone() - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            self.lo.clone() * &other.lo,
            self.lo.clone() * &other.hi,
            self.hi.clone() * &other.lo,
            self.hi.clone() * &other.hi,
        ];
        min_max(cands)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::spanning(self.lo.clone() * c, self.hi.clone() * c)
    }

    /// Tight power: even exponents of a zero-straddling interval start at 0.
    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::point(T::one());
        }
        let lo_n = pow_scalar(&self.lo, n);
        let hi_n = pow_scalar(&self.hi, n);
        if n % 2 == 1 {
            Interval { lo: lo_n, hi: hi_n }
        } else if self.contains_zero() {
            let top = if lo_n >= hi_n { lo_n } else { hi_n };
            Interval {
                lo: T::zero(),
                hi: top,
            }
        } else {
            Self::spanning(lo_n, hi_n)
        }
    }
}

impl<T: Field + PartialOrd> Interval<T> {
    pub fn midpoint(&self) -> T {
        (self.lo.clone() + &self.hi) / (T::one() + T::one())
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Interval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let inv = Self::spanning(T::one() / other.lo.clone(), T::one() / other.hi.clone());
        Some(self.mul(&inv))
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn abs<T: Scalar + PartialOrd>(v: &T) -> T {
    if *v < T::zero() {
        -v.clone()
    } else {
        v.clone()
    }
}

fn min_max<T: Scalar + PartialOrd>(vals: [T; 4]) -> Interval<T> {
    let mut lo = &vals[0];
    let mut hi = &vals[0];
    for v in &vals[1..] {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    Interval {
        lo: lo.clone(),
        hi: hi.clone(),
    }
}

pub(crate) fn pow_scalar<T: Scalar>(base: &T, mut n: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &b;
        }
        n >>= 1;
        if n > 0 {
            let sq = b.clone() * &b;
            b = sq;
        }
    }
    acc
}

/// One interval per variable, in `x, y, z` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalBox<T>(Vec<Interval<T>>);

impl<T: Scalar + PartialOrd> IntervalBox<T> {
    pub fn new(sides: Vec<Interval<T>>) -> Self {
        IntervalBox(sides)
    }

    pub fn point(coords: &[T]) -> Self {
        IntervalBox(coords.iter().cloned().map(Interval::point).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sides(&self) -> &[Interval<T>] {
        &self.0
    }

    pub fn side(&self, i: usize) -> &Interval<T> {
        &self.0[i]
    }

    pub fn contains(&self, p: &[T]) -> bool {
        p.len() == self.0.len() && self.0.iter().zip(p).all(|(iv, v)| iv.contains(v))
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.intersects(b))
    }

    pub fn is_point(&self) -> bool {
        self.0.iter().all(Interval::is_point)
    }

    /// Width of the widest side.
    pub fn max_width(&self) -> T {
        let mut best = T::zero();
        for s in &self.0 {
            let w = s.width();
            if w > best {
                best = w;
            }
        }
        best
    }
}

impl<T: fmt::Display> fmt::Display for IntervalBox<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, RatInterval};

    fn iv(a: i64, b: i64) -> RatInterval {
        Interval::new(rat(a), rat(b)).unwrap()
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(RatInterval::new(rat(2), rat(1)).is_none());
    }

    #[test]
    fn even_power_of_straddling_interval_is_tight() {
        assert_eq!(iv(-1, 2).pow(2), iv(0, 4));
        assert_eq!(iv(-3, 2).pow(3), iv(-27, 8));
        assert_eq!(iv(-3, -2).pow(2), iv(4, 9));
    }

    #[test]
    fn product_and_division() {
        assert_eq!(iv(-1, 2).mul(&iv(-1, 2)), iv(-2, 4));
        assert!(iv(1, 2).div(&iv(-1, 1)).is_none());
        let q = iv(1, 2).div(&iv(2, 4)).unwrap();
        assert_eq!(q, RatInterval::new(ratio(1, 4), rat(1)).unwrap());
    }

    #[test]
    fn bisect_halves() {
        let (a, b) = iv(0, 1).bisect();
        assert_eq!(a.hi(), &ratio(1, 2));
        assert_eq!(b.lo(), &ratio(1, 2));
    }
}
