//! Exact rational functions in `x, y, z` and maps built from them.

pub mod gcd;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::certify::{common_zero_system, verify_sos, Sign, SignCertificate, Verdict};
use crate::maps::{compose_maps, MapError, PolyMap};
use crate::poly::Var;
use crate::systems::{solve_bivariate, FiberMode, FiberResult, SolveError};
use crate::{Poly, Rational};

pub use gcd::{monic, poly_gcd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("no non-vanishing evidence for det(D {0})")]
    MissingEvidence(String),
    #[error("det(D {0}) vanishes somewhere; the lift is not defined on all of R^3")]
    Vanishes(String),
    #[error("evidence does not match the base map: {0}")]
    EvidenceMismatch(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatFuncError> {
        if den.is_zero() {
            return Err(RatFuncError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Poly::one().with_nvars(n),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let n = num.nvars().max(den.nvars());
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero().with_nvars(n),
                den: Poly::one().with_nvars(n),
            };
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction {
                num: num.scale(&c.recip()).with_nvars(n),
                den: Poly::one().with_nvars(n),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RationalFunction {
                num: q.with_nvars(n),
                den: Poly::one().with_nvars(n),
            };
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("non-zero denominator").clone();
        let k = lc.recip();
        RationalFunction {
            num: num.scale(&k).with_nvars(n),
            den: den.scale(&k).with_nvars(n),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_polynomial()?.constant_value()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.degree_in(v) > 0 || self.den.degree_in(v) > 0
    }

    /// Value at `point`, or `None` at a pole.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.clone().with_nvars(point.len()).eval(point).ok()?;
        if d.is_zero() {
            return None;
        }
        let n = self.num.clone().with_nvars(point.len()).eval(point).ok()?;
        Some(n / d)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(&self.num + &other.num, self.den.clone());
        }
        Self::reduce(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        Self::reduce(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        if other.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &other.den, &self.den * &other.num))
    }

    /// Quotient rule.
    pub fn partial(&self, v: Var) -> Self {
        let dn = self.num.partial(v);
        if self.den.degree_in(v) == 0 {
            return Self::reduce(dn, self.den.clone());
        }
        let dd = self.den.partial(v);
        Self::reduce(
            &(&dn * &self.den) - &(&self.num * &dd),
            &self.den * &self.den,
        )
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A tuple of rational functions over `x, y, z`.
#[derive(Clone, Debug)]
pub struct RationalMap {
    name: String,
    components: Vec<RationalFunction>,
}

impl RationalMap {
    pub fn new(name: impl Into<String>, components: Vec<RationalFunction>) -> Self {
        RationalMap {
            name: name.into(),
            components,
        }
    }

    pub fn from_polymap(m: &PolyMap) -> Self {
        let comps = m
            .components()
            .iter()
            .cloned()
            .map(RationalFunction::from_poly)
            .collect();
        Self::new(m.name(), comps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }
}

/// Determinant of the Jacobian matrix of a 3-component map over
/// `x, y, z`. Entries are differentiated on demand and structural zeros
/// (components free of a variable) are never formed.
pub fn rf_jacobian_det(m: &RationalMap) -> Result<RationalFunction, RatFuncError> {
    let comps = m.components();
    if comps.len() != 3 {
        return Err(RatFuncError::Arity {
            expected: 3,
            got: comps.len(),
        });
    }
    let mut lazy = LazyJacobian::new(comps);
    Ok(lazy.det3())
}

struct LazyJacobian<'a> {
    comps: &'a [RationalFunction],
    cache: Vec<Option<RationalFunction>>,
}

impl<'a> LazyJacobian<'a> {
    fn new(comps: &'a [RationalFunction]) -> Self {
        LazyJacobian {
            comps,
            cache: vec![None; 9],
        }
    }

    fn is_zero(&self, r: usize, c: usize) -> bool {
        !self.comps[r].depends_on(Var::ALL[c])
    }

    fn entry(&mut self, r: usize, c: usize) -> RationalFunction {
        let comps = self.comps;
        self.cache[3 * r + c]
            .get_or_insert_with(|| comps[r].partial(Var::ALL[c]))
            .clone()
    }

    fn det2(&mut self, rows: [usize; 2], cols: [usize; 2]) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(Poly::zero());
        for (sign, a, b) in [(1, (0, 0), (1, 1)), (-1, (0, 1), (1, 0))] {
            let (ra, ca) = (rows[a.0], cols[a.1]);
            let (rb, cb) = (rows[b.0], cols[b.1]);
            if self.is_zero(ra, ca) || self.is_zero(rb, cb) {
                continue;
            }
            let t = self.entry(ra, ca).mul(&self.entry(rb, cb));
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    fn det3(&mut self) -> RationalFunction {
        let zeros = |c: usize, s: &Self| (0..3).filter(|&r| s.is_zero(r, c)).count();
        let col = (0..3)
            .max_by_key(|&c| (zeros(c, self), std::cmp::Reverse(c)))
            .expect("three columns");
        let others: Vec<usize> = (0..3).filter(|&c| c != col).collect();
        let mut acc = RationalFunction::from_poly(Poly::zero());
        for r in 0..3 {
            if self.is_zero(r, col) {
                continue;
            }
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let minor = self.det2([rows[0], rows[1]], [others[0], others[1]]);
            if minor.is_zero() {
                continue;
            }
            let t = self.entry(r, col).mul(&minor);
            acc = if (r + col) % 2 == 0 {
                acc.add(&t)
            } else {
                acc.sub(&t)
            };
        }
        acc
    }
}

/// Why `det(D base)` never vanishes on the plane.
#[derive(Clone, Debug)]
pub enum NonvanishingEvidence {
    /// A sign certificate for `det(D base)` itself.
    Certificate(SignCertificate),
    /// `base = outer ∘ inner` with `det(D inner)` certified, `det(D outer)` a
    /// verified sum of squares whose zeros are isolated rational points, and
    /// each of those points omitted by `inner` (certified empty fibers).
    ChainRule(ChainRuleEvidence),
}

#[derive(Clone, Debug)]
pub struct ChainRuleEvidence {
    pub outer: PolyMap,
    pub inner: PolyMap,
    pub inner_certificate: SignCertificate,
    pub outer_sos_parts: Vec<Poly>,
    pub omitted: Vec<FiberResult>,
}

impl NonvanishingEvidence {
    /// The certified sign of `det(D base)`.
    pub fn check(&self, base: &PolyMap) -> Result<Sign, RatFuncError> {
        let mismatch = |s: &str| RatFuncError::EvidenceMismatch(s.to_string());
        match self {
            NonvanishingEvidence::Certificate(c) => {
                if c.polynomial != base.jacobian_det()? {
                    return Err(mismatch("certificate is for a different polynomial"));
                }
                match c.verdict {
                    Verdict::NeverVanishes(s) => Ok(s),
                    Verdict::Vanishes(_) => Err(RatFuncError::Vanishes(base.name().to_string())),
                }
            }
            NonvanishingEvidence::ChainRule(e) => {
                let composed = compose_maps(&e.outer, &e.inner)?;
                if composed.components() != base.components() {
                    return Err(mismatch("base is not outer ∘ inner"));
                }
                if e.inner_certificate.polynomial != e.inner.jacobian_det()? {
                    return Err(mismatch("inner certificate is for a different polynomial"));
                }
                let Verdict::NeverVanishes(sign) = e.inner_certificate.verdict else {
                    return Err(RatFuncError::Vanishes(e.inner.name().to_string()));
                };
                let jo = e.outer.jacobian_det()?;
                if !verify_sos(&jo, &e.outer_sos_parts) {
                    return Err(mismatch("outer parts do not sum to det(D outer)"));
                }
                let [a, b] = common_zero_system(&e.outer_sos_parts)
                    .ok_or_else(|| mismatch("need two or more parts"))?;
                for s in solve_bivariate(&a, &b)? {
                    let point = s
                        .exact_point()
                        .ok_or_else(|| mismatch("singular point of outer is not rational"))?;
                    let omitted = e.omitted.iter().any(|f| {
                        f.mode == FiberMode::Exact
                            && f.map_name == e.inner.name()
                            && f.target == point
                            && f.is_empty()
                    });
                    if !omitted {
                        return Err(mismatch(
                            "a singular point of outer lacks an empty inner fiber",
                        ));
                    }
                }
                Ok(sign)
            }
        }
    }
}

/// The lift `(b1, b2, z / det(D base))` of a planar map with certified
/// non-vanishing Jacobian.
pub fn build_g(
    base: &PolyMap,
    evidence: Option<&NonvanishingEvidence>,
) -> Result<RationalMap, RatFuncError> {
    if !base.is_planar() {
        return Err(RatFuncError::Arity {
            expected: 2,
            got: base.components().len(),
        });
    }
    let evidence =
        evidence.ok_or_else(|| RatFuncError::MissingEvidence(base.name().to_string()))?;
    evidence.check(base)?;
    let j = base.jacobian_det()?.with_nvars(3);
    let lift = |p: &Poly| RationalFunction::from_poly(p.clone().with_nvars(3));
    let third = RationalFunction::new(Poly::var(Var::Z), j)?;
    Ok(RationalMap::new(
        format!("G[{}]", base.name()),
        vec![lift(base.component(0)), lift(base.component(1)), third],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::nonvanishing_sign;
    use crate::maps::builtin;
    use crate::parser::parse_poly;
    use crate::{rat, ratio};

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(parse_poly(n).unwrap(), parse_poly(d).unwrap()).unwrap()
    }

    fn poly_rf(s: &str) -> RationalFunction {
        RationalFunction::from_poly(parse_poly(s).unwrap())
    }

    #[test]
    fn arithmetic_examples() {
        let a = rf("x^2 - 1", "x - 1");
        assert_eq!(a.num(), &parse_poly("x + 1").unwrap());
        assert!(a.den().is_constant());
        assert_eq!(
            rf("1", "x").mul(&poly_rf("x")).constant_value(),
            Some(rat(1))
        );
        let s = rf("1", "x").add(&rf("1", "y"));
        assert_eq!(s, rf("x + y", "x*y"));
        assert_eq!(s.den(), &parse_poly("x*y").unwrap());
        assert_eq!(
            poly_rf("x").div(&poly_rf("0")).unwrap_err(),
            RatFuncError::DivisionByZero
        );
        assert_eq!(
            RationalFunction::new(parse_poly("1").unwrap(), Poly::zero()).unwrap_err(),
            RatFuncError::ZeroDenominator
        );
    }

    #[test]
    fn denominator_is_monic() {
        let a = rf("3*x", "-6*y - 3");
        assert_eq!(a.den(), &parse_poly("y + 1/2").unwrap());
        assert_eq!(a.num(), &parse_poly("-1/2*x").unwrap());
    }

    #[test]
    fn partial_examples() {
        let j = "x^2 + y^2 + 1";
        let g = rf("z", j);
        assert_eq!(g.partial(Var::Z), rf("1", j));
        assert_eq!(g.partial(Var::X), rf("-2*x*z", &format!("({j})^2")));
        assert_eq!(rf("1", "x").partial(Var::X), rf("-1", "x^2"));
    }

    #[test]
    fn jacobian_examples() {
        let id = RationalMap::new("id", vec![poly_rf("x"), poly_rf("y"), poly_rf("z")]);
        assert_eq!(rf_jacobian_det(&id).unwrap().constant_value(), Some(rat(1)));
        let m = RationalMap::new("m", vec![poly_rf("x"), poly_rf("y"), poly_rf("2*z")]);
        assert_eq!(rf_jacobian_det(&m).unwrap().constant_value(), Some(rat(2)));
        let m = RationalMap::new(
            "m",
            vec![rf("x", "y^2 + 1"), poly_rf("x*y"), rf("z", "x^2 + 1")],
        );
        let d = rf_jacobian_det(&m).unwrap();
        let p = [ratio(1, 3), rat(2), rat(-1)];
        let e = |r: &RationalFunction| r.eval(&p).unwrap();
        let c = m.components();
        let a = |i: usize, v: Var| e(&c[i].partial(v));
        let expect = a(0, Var::X) * (a(1, Var::Y) * a(2, Var::Z) - a(1, Var::Z) * a(2, Var::Y))
            - a(0, Var::Y) * (a(1, Var::X) * a(2, Var::Z) - a(1, Var::Z) * a(2, Var::X))
            + a(0, Var::Z) * (a(1, Var::X) * a(2, Var::Y) - a(1, Var::Y) * a(2, Var::X));
        assert_eq!(e(&d), expect);
    }

    #[test]
    fn lift_of_phi_has_unit_jacobian() {
        let phi = builtin("phi").unwrap();
        // det(D phi) vanishes at (+-1, 0), so a direct certificate is refused.
        let cert = nonvanishing_sign(&phi.jacobian_det().unwrap(), None, 0).unwrap();
        let ev = NonvanishingEvidence::Certificate(cert);
        assert!(matches!(
            build_g(&phi, Some(&ev)),
            Err(RatFuncError::Vanishes(_))
        ));
        assert!(matches!(
            build_g(&phi, None),
            Err(RatFuncError::MissingEvidence(_))
        ));
    }

    #[test]
    fn lift_with_certificate() {
        let m = PolyMap::planar(
            "m",
            parse_poly("x + y^3").unwrap(),
            parse_poly("y").unwrap(),
        )
        .unwrap();
        let cert = nonvanishing_sign(&m.jacobian_det().unwrap(), None, 0).unwrap();
        let g = build_g(&m, Some(&NonvanishingEvidence::Certificate(cert))).unwrap();
        assert_eq!(rf_jacobian_det(&g).unwrap().constant_value(), Some(rat(1)));
    }
}
