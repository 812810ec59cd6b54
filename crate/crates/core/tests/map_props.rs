mod common;

use std::sync::LazyLock;

use common::{config, point, poly};
use num_traits::{One, Signed};
use polycert::certify::{nonvanishing_sign, Sign};
use polycert::maps::{builtin, compose_maps, realize_complex, PolyMap};
use polycert::ratfunc::{build_g, rf_jacobian_det, NonvanishingEvidence};
use polycert::{rat, Poly, RatUPoly, Rational, Var};
use proptest::prelude::*;

struct Maps {
    phi: PolyMap,
    bf: PolyMap,
    f: PolyMap,
    ftilde: PolyMap,
    jphi: Poly,
    jbf: Poly,
    jf: Poly,
}

static MAPS: LazyLock<Maps> = LazyLock::new(|| {
    let (phi, bf) = (builtin("phi").unwrap(), builtin("F").unwrap());
    let f = builtin("f").unwrap();
    Maps {
        jphi: phi.jacobian_det().unwrap(),
        jbf: bf.jacobian_det().unwrap(),
        jf: f.jacobian_det().unwrap(),
        ftilde: builtin("ftilde").unwrap(),
        phi,
        bf,
        f,
    }
});

fn at(p: &Poly, pt: &[Rational]) -> Rational {
    p.clone().with_nvars(2).eval(pt).unwrap()
}

fn upoly_in_z(coeffs: &[i64]) -> Poly {
    let u = RatUPoly::new(coeffs.iter().map(|&c| rat(c)).collect());
    Poly::from_univariate(&u, Var::Z)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn chain_rule_for_f(p in point(2)) {
        let m = &*MAPS;
        let fp = m.bf.eval(&p).unwrap();
        prop_assert_eq!(at(&m.jf, &p), at(&m.jphi, &fp) * at(&m.jbf, &p));
        prop_assert_eq!(m.f.eval(&p).unwrap(), m.phi.eval(&fp).unwrap());
    }

    #[test]
    fn ftilde_second_component_positive(p in point(2)) {
        prop_assert!(at(MAPS.ftilde.component(1), &p).is_positive());
    }

    #[test]
    fn holomorphic_jacobian_is_derivative_norm(coeffs in prop::collection::vec(-4i64..=4, 1..5)) {
        let c = upoly_in_z(&coeffs);
        let m = realize_complex(&c).unwrap();
        let d = realize_complex(&c.partial(Var::Z)).unwrap();
        let (re, im) = (d.component(0), d.component(1));
        prop_assert_eq!(m.jacobian_det().unwrap(), &(re * re) + &(im * im));
    }

    /// `(u, y^3 + y + g(u))` after the shear `u = x + h(y)` has Jacobian
    /// `3 y^2 + 1`, so the lift has unit Jacobian.
    #[test]
    fn lift_has_unit_jacobian(h in poly(2, 2, 3), g in poly(2, 2, 3)) {
        let h = h.specialize(Var::X, &rat(0));
        let g = g.specialize(Var::Y, &rat(0));
        let x = Poly::var(Var::X);
        let y = Poly::var(Var::Y);
        let u = &x + &h;
        let second = &(&(&y * &(&y * &y)) + &y) + &g.compose(&[u.clone(), y.clone()]).unwrap();
        let base = PolyMap::planar("B", u, second).unwrap();
        let j = base.jacobian_det().unwrap();
        let cert = nonvanishing_sign(&j, None, 0).unwrap();
        prop_assert!(cert.verdict.is_never_vanishes(Sign::Positive));
        let lift = build_g(&base, Some(&NonvanishingEvidence::Certificate(cert))).unwrap();
        prop_assert_eq!(rf_jacobian_det(&lift).unwrap().constant_value(), Some(Rational::one()));
    }
}

proptest! {
    #![proptest_config(config(1000))]

    /// The issued certificate says det(D F) > 0; sample it.
    #[test]
    fn bf_jacobian_positive_on_samples(p in point(2)) {
        prop_assert!(at(&MAPS.jbf, &p).is_positive());
    }
}

#[test]
fn bf_certificate_is_positive() {
    let c = nonvanishing_sign(&MAPS.jbf, None, 0).unwrap();
    assert!(c.verdict.is_never_vanishes(Sign::Positive));
    let id = compose_maps(&PolyMap::identity(2), &MAPS.bf).unwrap();
    assert_eq!(id.components(), MAPS.bf.components());
}
