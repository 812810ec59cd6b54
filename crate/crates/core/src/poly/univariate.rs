//! Dense univariate polynomials, the workhorse of root isolation and
//! elimination.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::scalar::{Field, Scalar};
use crate::Rational;

/// Coefficients in ascending order; never has a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        UPoly {
            coeffs: vec![C::zero(), C::one()],
        }
    }

    /// `x - r`.
    pub fn linear_root(r: C) -> Self {
        Self::new(vec![-r, C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = C::zero();
        for c in self.coeffs.iter().skip(1) {
            k += &C::one();
            out.push(c.clone() * &k);
        }
        Self::new(out)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dd {
            return self.clone();
        }
        let lcd = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = da - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lcd;
            }
            let off = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = lead.clone() * dc;
                r[off + i] -= &t;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = Self::new(r);
        if steps > 0 {
            let f = crate::interval::pow_scalar(&lcd, steps as u32);
            out = out.scale(&f);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Uses the coefficient type's division and checks it back, so it works
    /// over the integers as well as over fields.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.deg();
        if da < dd {
            return None;
        }
        let lcd = d.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![C::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let lead = r[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let qc = lead.clone() / lcd.clone();
            if qc.clone() * lcd != lead {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = qc.clone() * dc;
                r[k + i] -= &t;
            }
            q[k] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_scalar(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    pub fn map<D: Scalar>(&self, f: impl FnMut(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `self(g(x))` by Horner's scheme.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }
}

impl<C: Scalar + PartialOrd> UPoly<C> {
    /// Horner enclosure over an interval.
    pub fn eval_interval(&self, iv: &Interval<C>) -> Interval<C> {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(iv).add(&Interval::point(c.clone()));
        }
        acc
    }
}

impl<C: Field> UPoly<C> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if da < dd {
            return (Self::zero(), self.clone());
        }
        let lcd = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![C::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let qc = r[k + dd].clone() / lcd.clone();
            if qc.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = qc.clone() * dc;
                r[k + i] -= &t;
            }
            q[k] = qc;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }
}

impl UPoly<BigInt> {
    /// Gcd of the coefficients, taken non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Divides out the (positive) content without touching the sign.
    pub fn strip_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.div_scalar(&c)
    }

    /// Primitive gcd with positive leading coefficient, via the primitive
    /// remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return Self::one();
            }
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Sign of the value at a rational point, computed without fractions.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let n = x.numer();
        let d = x.denom();
        // sum c_k n^k d^(deg-k) has the sign of d^deg * f(n/d), d > 0.
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        let deg = self.deg();
        let mut dpows = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            dpows.push(dpow.clone());
            dpow *= d;
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc *= n;
            acc += c * &dpows[deg - k];
        }
        acc.sign_ordering()
    }

    pub fn to_rational(&self) -> UPoly<Rational> {
        self.map(|c| Rational::from_integer(c.clone()))
    }
}

impl UPoly<Rational> {
    /// Clears denominators and content: a primitive integer polynomial with
    /// positive leading coefficient and the same roots.
    pub fn to_primitive_integer(&self) -> UPoly<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        UPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn add_impl<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>, negate: bool) -> UPoly<C> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(C::zero);
        let y = b.coeffs.get(i);
        out.push(match (y, negate) {
            (None, _) => x,
            (Some(y), false) => x + y,
            (Some(y), true) => x - y,
        });
    }
    UPoly::new(out)
}

fn mul_impl<C: Scalar>(a: &UPoly<C>, b: &UPoly<C>) -> UPoly<C> {
    if a.is_zero() || b.is_zero() {
        return UPoly::zero();
    }
    let mut out = vec![C::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            let t = x.clone() * y;
            out[i + j] += &t;
        }
    }
    UPoly::new(out)
}

impl<'a, C: Scalar> Add<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        add_impl(self, rhs, false)
    }
}

impl<'a, C: Scalar> Sub<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        add_impl(self, rhs, true)
    }
}

impl<'a, C: Scalar> Mul<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        mul_impl(self, rhs)
    }
}

impl<C: Scalar> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}
