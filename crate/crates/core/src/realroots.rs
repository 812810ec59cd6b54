//! Exact counting and isolation of real roots of univariate polynomials.
//!
//! The counting primitive is a Sturm chain built from pseudo-remainders with
//! the positive content divided out at every step. Chains and evaluations
//! run over the integers; interval endpoints are rationals.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::{IntUPoly, RatInterval, RatUPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial is not square-free")]
    NotSquareFree,
}

/// `f / gcd(f, f')` made primitive with positive leading coefficient.
pub fn squarefree_part(f: &RatUPoly) -> Result<RatUPoly, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    Ok(squarefree_int(&f.to_primitive_integer()).to_rational())
}

pub(crate) fn squarefree_int(f: &IntUPoly) -> IntUPoly {
    let f = f.primitive_part();
    if f.deg() == 0 {
        return IntUPoly::one();
    }
    let g = f.gcd(&f.derivative());
    if g.deg() == 0 {
        return f;
    }
    f.div_exact(&g)
        .expect("gcd divides its argument")
        .primitive_part()
}

/// Sturm chain of a square-free integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntUPoly>,
}

impl SturmChain {
    pub fn new(f: &IntUPoly) -> Self {
        let mut chain = vec![f.strip_content()];
        let d = f.derivative().strip_content();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let e = a.deg() + 1 - b.deg();
            let r = a.prem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^e * rem; we want -rem up to a positive factor.
            let flip = b.lc().unwrap().is_negative() && e % 2 == 1;
            let next = if flip { r } else { -&r };
            chain.push(next.strip_content());
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[IntUPoly] {
        &self.chain
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    fn is_root(&self, x: &Rational) -> bool {
        self.chain[0].sign_at(x) == Ordering::Equal
    }

    /// Roots in the open interval `(a, b)`; endpoints may be roots.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_half_open(a, b);
        if self.is_root(b) {
            n.saturating_sub(1)
        } else {
            n
        }
    }
}

/// Number of distinct real roots in the open interval. The polynomial must be
/// square-free; endpoints that are roots are not counted.
pub fn sturm_count(f: &RatUPoly, interval: &RatInterval) -> Result<usize, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let fi = f.to_primitive_integer();
    if fi.gcd(&fi.derivative()).deg() > 0 {
        return Err(RootError::NotSquareFree);
    }
    let chain = SturmChain::new(&fi);
    Ok(chain.count_open(interval.lo(), interval.hi()))
}

/// An interval holding exactly one real root of `poly`.
///
/// Either the endpoints are non-roots with opposite signs of `poly`, or the
/// interval is a single point that is itself the root.
#[derive(Clone, Debug)]
pub struct IsolatingInterval {
    interval: RatInterval,
    poly: Arc<IntUPoly>,
}

impl IsolatingInterval {
    pub(crate) fn from_parts(interval: RatInterval, poly: Arc<IntUPoly>) -> Self {
        IsolatingInterval { interval, poly }
    }

    pub fn interval(&self) -> &RatInterval {
        &self.interval
    }

    pub fn lo(&self) -> &Rational {
        self.interval.lo()
    }

    pub fn hi(&self) -> &Rational {
        self.interval.hi()
    }

    /// The square-free polynomial whose root is isolated.
    pub fn poly(&self) -> RatUPoly {
        self.poly.to_rational()
    }

    /// The root itself when it is rational and was hit exactly.
    pub fn exact(&self) -> Option<&Rational> {
        self.interval.is_point().then(|| self.interval.lo())
    }

    pub fn width(&self) -> Rational {
        self.interval.width()
    }

    /// Halves the interval once, keeping the root.
    pub fn bisect_once(&self) -> IsolatingInterval {
        if self.interval.is_point() {
            return self.clone();
        }
        let m = self.interval.midpoint();
        let sm = self.poly.sign_at(&m);
        let interval = if sm == Ordering::Equal {
            Interval::point(m)
        } else if sm == self.poly.sign_at(self.lo()) {
            Interval::new(m, self.hi().clone()).unwrap()
        } else {
            Interval::new(self.lo().clone(), m).unwrap()
        };
        IsolatingInterval {
            interval,
            poly: self.poly.clone(),
        }
    }

    /// The root when it is rational. A rational root `p/q` has `q | lc`, so
    /// below width `1 / (2 lc^2)` it is the simplest rational inside.
    pub fn rational_value(&self) -> Option<Rational> {
        if let Some(a) = self.exact() {
            return Some(a.clone());
        }
        let lc = self.poly.lc()?.clone();
        let w = Rational::new(One::one(), &lc * &lc * 2);
        self.probe(&w)
    }

    /// Looks for the simplest rational root after refining to `width`.
    /// `None` proves nothing unless `width` is below `1 / (2 lc^2)`.
    pub fn probe(&self, width: &Rational) -> Option<Rational> {
        let fine = self.refine(width);
        if let Some(a) = fine.exact() {
            return Some(a.clone());
        }
        let c = simplest_rational(fine.lo(), fine.hi());
        (self.poly.sign_at(&c) == Ordering::Equal).then_some(c)
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&self, width: &Rational) -> IsolatingInterval {
        let mut cur = self.clone();
        while !cur.interval.is_point() && &cur.width() > width {
            cur = cur.bisect_once();
        }
        cur
    }
}

/// Cauchy bound rounded up to a power of two: every root has modulus
/// strictly below the returned value.
fn root_bound(f: &IntUPoly) -> Rational {
    let lc = f.lc().unwrap().abs();
    let mut max = BigInt::zero();
    for c in &f.coeffs()[..f.deg()] {
        let a = c.abs();
        if a > max {
            max = a;
        }
    }
    // 1 + max/lc < 2^k
    let ratio = Rational::one() + Rational::new(max, lc);
    let mut b = Rational::one();
    while b <= ratio {
        b *= Rational::from_integer(2.into());
    }
    b
}

/// Isolating intervals for every distinct real root, in increasing order.
pub fn isolate_roots(f: &RatUPoly) -> Result<Vec<IsolatingInterval>, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    Ok(isolate_int(&f.to_primitive_integer()))
}

pub(crate) fn isolate_int(f: &IntUPoly) -> Vec<IsolatingInterval> {
    let sf = Arc::new(squarefree_int(f));
    if sf.deg() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sf);
    let b = root_bound(&sf);
    let a = -b.clone();
    let mut out = Vec::new();
    let n = chain.count_open(&a, &b);
    split(&chain, a, b, n, &mut out);
    out.into_iter()
        .map(|iv| IsolatingInterval {
            interval: iv,
            poly: sf.clone(),
        })
        .collect()
}

/// Recursive bisection of `(a, b)` holding `n` roots, endpoints non-roots.
fn split(chain: &SturmChain, a: Rational, b: Rational, n: usize, out: &mut Vec<RatInterval>) {
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(Interval::new(a, b).unwrap());
        return;
    }
    let two = Rational::from_integer(2.into());
    let m = (&a + &b) / &two;
    if chain.is_root(&m) {
        let left = step_off(chain, &a, &m, false);
        let right = step_off(chain, &m, &b, true);
        let nl = chain.count_open(&a, &left);
        let nr = chain.count_open(&right, &b);
        split(chain, a, left, nl, out);
        out.push(Interval::point(m));
        split(chain, right, b, nr, out);
    } else {
        let nl = chain.count_open(&a, &m);
        split(chain, a, m.clone(), nl, out);
        split(chain, m, b, n - nl, out);
    }
}

/// A non-root point strictly between `root` and the far end of `(lo, hi)`
/// with no root between it and `root`.
fn step_off(chain: &SturmChain, lo: &Rational, hi: &Rational, rightward: bool) -> Rational {
    let two = Rational::from_integer(2.into());
    let mut delta = (hi - lo) / &two;
    loop {
        let (p, between) = if rightward {
            let p = lo + &delta;
            let c = chain.count_open(lo, &p);
            (p, c)
        } else {
            let p = hi - &delta;
            let c = chain.count_open(&p, hi);
            (p, c)
        };
        if between == 0 && !chain.is_root(&p) {
            return p;
        }
        delta /= &two;
    }
}

/// The rational with the smallest denominator in `[lo, hi]` (then the
/// smallest absolute numerator), by continued fractions.
pub fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo <= &Rational::zero() && &Rational::zero() <= hi {
        return Rational::zero();
    }
    if hi < &Rational::zero() {
        return -simplest_rational(&-hi.clone(), &-lo.clone());
    }
    simplest_positive(lo.clone(), hi.clone())
}

fn simplest_positive(lo: Rational, hi: Rational) -> Rational {
    let fl = lo.floor();
    if fl == lo {
        return lo;
    }
    if fl.clone() + Rational::one() <= hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the
    // fractional parts.
    let inner = simplest_positive(Rational::one() / (hi - &fl), Rational::one() / (lo - &fl));
    fl + Rational::one() / inner
}
