//! Sparse multivariate polynomials over `x, y, z`.
//!
//! Terms are kept in a map keyed by [`Monomial`] under graded lexicographic
//! order with `x > y > z`; zero coefficients are never stored, so structural
//! equality of the maps is polynomial equality.

mod matrix;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::interval::{Interval, IntervalBox};
use crate::scalar::{Field, Scalar};

pub use matrix::{det, jacobian_matrix};
pub use univariate::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows} rows, row of length {cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("determinant of a {0}x{0} matrix is not supported")]
    UnsupportedSize(usize),
}

/// A variable of the fixed universe `x, y, z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent vector `(a, b, c)` standing for `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 3];
        for i in 0..3 {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    /// Number of leading variables needed to express this monomial.
    fn span(&self) -> usize {
        (0..3).rev().find(|&i| self.0[i] > 0).map_or(0, |i| i + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with coefficients in `C`.
///
/// `nvars` is the declared arity: the polynomial is read as a function of the
/// first `nvars` variables of `x, y, z`. It never drops below the highest
/// variable actually present and does not take part in equality.
#[derive(Clone, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: PartialEq> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Eq> Eq for Polynomial<C> {}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            nvars: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(C::one(), Monomial::var(v))
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let nvars = m.span();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        map.retain(|_, c| !c.is_zero());
        let nvars = map.keys().map(Monomial::span).max().unwrap_or(0);
        Polynomial { nvars, terms: map }
    }

    fn from_map(map: BTreeMap<Monomial, C>, nvars: usize) -> Self {
        let used = map.keys().map(Monomial::span).max().unwrap_or(0);
        Polynomial {
            nvars: nvars.max(used),
            terms: map,
        }
    }

    /// Declared arity.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial with declared arity raised to at least `n`.
    pub fn with_nvars(mut self, n: usize) -> Self {
        self.nvars = self.nvars.max(n.min(3));
        self
    }

    /// Smallest arity able to express the polynomial.
    pub fn used_vars(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero().with_nvars(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (*m, v.clone() * c))
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn map_coeffs<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> Polynomial<D> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                terms.insert(*m, d);
            }
        }
        Polynomial::from_map(terms, self.nvars)
    }

    /// `self^n` by repeated squaring; `pow(0)` is 1.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one().with_nvars(self.nvars);
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

    /// Substitutes `subs[i]` for the `i`-th variable.
    pub fn compose(&self, subs: &[Polynomial<C>]) -> Result<Self, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let out_nvars = subs.iter().map(|s| s.nvars).max().unwrap_or(0);
        let mut powers: Vec<BTreeMap<u32, Polynomial<C>>> = vec![BTreeMap::new(); subs.len()];
        for (i, sub) in subs.iter().enumerate() {
            let mut wanted: Vec<u32> = self.terms.keys().map(|m| m.0[i]).collect();
            wanted.sort_unstable();
            wanted.dedup();
            let mut prev_exp = 0;
            let mut prev = Self::one();
            for e in wanted {
                let p = if e == prev_exp {
                    prev.clone()
                } else {
                    &prev * &sub.pow(e - prev_exp)
                };
                powers[i].insert(e, p.clone());
                prev = p;
                prev_exp = e;
            }
        }
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, pw) in powers.iter().enumerate() {
                let e = m.0[i];
                if e > 0 {
                    term = &term * &pw[&e];
                }
            }
            for (tm, tc) in term.terms {
                accumulate(&mut acc, tm, tc);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self::from_map(acc, out_nvars))
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            let mut k = C::zero();
            for _ in 0..e {
                k += &C::one();
            }
            let d = c.clone() * &k;
            if !d.is_zero() {
                terms.insert(dm, d);
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(Var::ALL[i])).collect()
    }

    /// Exact evaluation; `point` supplies one value per declared variable.
    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    fn eval_unchecked(&self, point: &[C]) -> C {
        let mut pow_cache: Vec<BTreeMap<u32, C>> = vec![BTreeMap::new(); point.len()];
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.0[i];
                if e > 0 {
                    let p = pow_cache[i]
                        .entry(e)
                        .or_insert_with(|| crate::interval::pow_scalar(v, e));
                    t *= &*p;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes a value for one variable, keeping the declared arity.
    pub fn specialize(&self, v: Var, value: &C) -> Self {
        let i = v.index();
        let mut pows: BTreeMap<u32, C> = BTreeMap::new();
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let p = pows
                .entry(e)
                .or_insert_with(|| crate::interval::pow_scalar(value, e));
            let mut nm = *m;
            nm.0[i] = 0;
            accumulate(&mut acc, nm, c.clone() * &*p);
        }
        acc.retain(|_, c: &mut C| !c.is_zero());
        Self::from_map(acc, self.nvars)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        let (ia, ib) = (a.index(), b.index());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm = *m;
                nm.0.swap(ia, ib);
                (nm, c.clone())
            })
            .collect();
        Self::from_map(terms, self.nvars.max(ia.max(ib) + 1))
    }

    /// Coefficients of `v^0, v^1, ...`, each free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Self> {
        let i = v.index();
        let deg = self.degree_in(v) as usize;
        let mut maps: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); deg + 1];
        if self.is_zero() {
            return vec![Self::zero().with_nvars(self.nvars)];
        }
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut nm = *m;
            nm.0[i] = 0;
            maps[e].insert(nm, c.clone());
        }
        maps.into_iter()
            .map(|t| Self::from_map(t, self.nvars))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(coeffs: &[Self], v: Var) -> Self {
        let xv = Self::var(v);
        let mut acc = Self::zero();
        let mut pw = Self::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                pw = &pw * &xv;
            }
            if !c.is_zero() {
                acc = &acc + &(c * &pw);
            }
        }
        acc
    }

    /// The polynomial as univariate in `v`, if no other variable appears.
    pub fn to_univariate(&self, v: Var) -> Option<UPoly<C>> {
        let i = v.index();
        let deg = self.degree_in(v) as usize;
        let mut coeffs = vec![C::zero(); deg + 1];
        for (m, c) in &self.terms {
            if (0..3).any(|j| j != i && m.0[j] != 0) {
                return None;
            }
            coeffs[m.0[i] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_univariate(u: &UPoly<C>, v: Var) -> Self {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut e = [0; 3];
                e[v.index()] = k as u32;
                (Monomial(e), c.clone())
            });
        Self::from_terms(terms)
    }
}

impl<C: Scalar + PartialOrd> Polynomial<C> {
    /// Interval enclosure of the range over `b` (one side per declared
    /// variable). Evaluated term by term, so it is sound but not tight.
    pub fn eval_interval(&self, b: &IntervalBox<C>) -> Result<Interval<C>, PolyError> {
        if b.dim() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: b.dim(),
            });
        }
        let mut acc = Interval::zero();
        let mut cache: Vec<BTreeMap<u32, Interval<C>>> = vec![BTreeMap::new(); b.dim()];
        for (m, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for i in 0..b.dim() {
                let e = m.0[i];
                if e > 0 {
                    let p = cache[i].entry(e).or_insert_with(|| b.side(i).pow(e));
                    t = t.mul(p);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl<C: Field> Polynomial<C> {
    /// `self / d` when `d` divides `self` exactly, by multivariate division
    /// in graded lexicographic order.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (*dm, dc.clone());
        if d.len() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(&dm)?, c.clone() / dc.clone());
            }
            return Some(Self::from_map(terms, self.nvars.max(d.nvars)));
        }
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc / dc.clone();
            for (m, c) in &d.terms {
                let t = qc.clone() * c;
                let key = m.mul(&qm);
                accumulate(&mut rem, key, -t);
                if rem.get(&key).is_some_and(|v| v.is_zero()) {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Some(Self::from_map(quot, self.nvars.max(d.nvars)))
    }
}

fn accumulate<C: Scalar>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
        }
    }
}

fn add_impl<C: Scalar>(a: &Polynomial<C>, b: &Polynomial<C>, negate: bool) -> Polynomial<C> {
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        let c = if negate { -c.clone() } else { c.clone() };
        accumulate(&mut terms, *m, c);
        if terms.get(m).is_some_and(|v| v.is_zero()) {
            terms.remove(m);
        }
    }
    Polynomial {
        nvars: a.nvars.max(b.nvars),
        terms,
    }
}

fn mul_impl<C: Scalar>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    let nvars = a.nvars.max(b.nvars);
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero().with_nvars(nvars);
    }
    let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            accumulate(&mut terms, ma.mul(mb), ca.clone() * cb);
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Polynomial { nvars, terms }
}

impl<'a, C: Scalar> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        add_impl(self, rhs, false)
    }
}

impl<'a, C: Scalar> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        add_impl(self, rhs, true)
    }
}

impl<'a, C: Scalar> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        mul_impl(self, rhs)
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<C: Scalar> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::{rat, Poly, RatBox, RatInterval};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial([2, 0, 0]);
        let xy = Monomial([1, 1, 0]);
        let y2 = Monomial([0, 2, 0]);
        let x = Monomial([1, 0, 0]);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let f = crate::maps::bf_p();
        let minus = f.scale(&rat(-1));
        assert!((&f + &minus).is_zero());
    }

    #[test]
    fn binomial_square() {
        assert_eq!(p("x+1").pow(2), p("x^2+2*x+1"));
        assert_eq!(p("x+1").pow(0), Poly::one());
    }

    #[test]
    fn compose_examples() {
        let f = p("x^2+y");
        let out = f.compose(&[p("x+1"), p("y")]).unwrap();
        assert_eq!(out, p("x^2+2*x+1+y"));
        let q = crate::maps::bf_q();
        assert_eq!(p("x").compose(std::slice::from_ref(&q)).unwrap(), q);
        assert!(matches!(
            f.compose(&[p("x")]),
            Err(PolyError::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("x^2*y").partial(Var::X), p("2*x*y"));
        let bp = crate::maps::bf_p();
        assert_eq!(bp.partial(Var::X).coeff(&Monomial::ONE), rat(1));
        assert_eq!(bp.partial(Var::Y).coeff(&Monomial::ONE), rat(1));
        assert!(p("x^2").partial(Var::Z).is_zero());
    }

    #[test]
    fn eval_examples() {
        let bp = crate::maps::bf_p();
        let bq = crate::maps::bf_q();
        assert_eq!(bp.eval(&[rat(0), rat(0)]).unwrap(), rat(0));
        assert_eq!(bp.eval(&[rat(1), rat(0)]).unwrap(), rat(5));
        assert_eq!(bq.eval(&[rat(1), rat(0)]).unwrap(), rat(-35));
        assert!(bp.eval(&[rat(1)]).is_err());
    }

    #[test]
    fn interval_eval_examples() {
        let b = RatBox::new(vec![RatInterval::new(rat(-1), rat(2)).unwrap()]);
        let r = p("x^2").eval_interval(&b).unwrap();
        assert!(r.encloses(&RatInterval::new(rat(0), rat(4)).unwrap()));
        let unit = RatInterval::new(rat(0), rat(1)).unwrap();
        let b2 = RatBox::new(vec![unit.clone(), unit]);
        assert_eq!(
            p("x+y").eval_interval(&b2).unwrap(),
            RatInterval::new(rat(0), rat(2)).unwrap()
        );
        let origin = RatBox::point(&[rat(0), rat(0)]);
        assert_eq!(
            crate::maps::bf_p().eval_interval(&origin).unwrap(),
            RatInterval::point(rat(0))
        );
    }

    #[test]
    fn exact_division() {
        let a = p("x^2-y^2");
        assert_eq!(a.div_exact(&p("x-y")), Some(p("x+y")));
        assert_eq!(a.div_exact(&p("x+2")), None);
    }

    #[test]
    fn specialize_and_coefficients() {
        let f = p("x^2*y + 3*y^2 + x");
        assert_eq!(f.specialize(Var::Y, &rat(2)), p("2*x^2+x+12").with_nvars(2));
        let cs = f.coefficients_in(Var::Y);
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coefficients_in(&cs, Var::Y), f);
    }
}
