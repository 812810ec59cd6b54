mod common;

use common::{config, point, poly, small_rational};
use num_traits::{One, Zero};
use polycert::maps::{compose_maps, PolyMap};
use polycert::parser::{parse_poly, print_canonical};
use polycert::ratfunc::{poly_gcd, RationalFunction};
use polycert::{Poly, Rational, Var};
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn product_rule(a in poly(3, 3, 5), b in poly(3, 3, 5), k in 0usize..3) {
        let v = Var::from_index(k).unwrap();
        let lhs = (&a * &b).partial(v);
        let rhs = &(&a.partial(v) * &b) + &(&a * &b.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_rule(f in poly(2, 3, 5), g in poly(2, 2, 4), h in poly(2, 2, 4), k in 0usize..2) {
        let v = Var::from_index(k).unwrap();
        let subs = [g.clone(), h.clone()];
        let lhs = f.compose(&subs).unwrap().partial(v);
        let fx = f.partial(Var::X).compose(&subs).unwrap();
        let fy = f.partial(Var::Y).compose(&subs).unwrap();
        let rhs = &(&fx * &g.partial(v)) + &(&fy * &h.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_commutes_with_eval(
        f in poly(2, 3, 5),
        g in poly(2, 3, 4),
        h in poly(2, 3, 4),
        p in point(2),
    ) {
        let lhs = f.compose(&[g.clone(), h.clone()]).unwrap().with_nvars(2).eval(&p).unwrap();
        let inner = [g.with_nvars(2).eval(&p).unwrap(), h.with_nvars(2).eval(&p).unwrap()];
        prop_assert_eq!(lhs, f.with_nvars(2).eval(&inner).unwrap());
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(3, 3, 5), b in poly(3, 3, 5), p in point(3)) {
        let e = |q: &Poly| q.clone().with_nvars(3).eval(&p).unwrap();
        prop_assert_eq!(e(&(&a * &b)), e(&a) * e(&b));
        prop_assert_eq!(e(&(&a - &b)), e(&a) - e(&b));
    }

    #[test]
    fn det_is_multiplicative_at_points(
        a in prop::collection::vec(poly(2, 2, 4), 2),
        b in prop::collection::vec(poly(2, 2, 4), 2),
        p in point(2),
    ) {
        let ma = PolyMap::new("A", a, 2).unwrap();
        let mb = PolyMap::new("B", b, 2).unwrap();
        let ab = compose_maps(&ma, &mb).unwrap();
        let e = |q: Poly, at: &[Rational]| q.with_nvars(2).eval(at).unwrap();
        let bp = mb.eval(&p).unwrap();
        let lhs = e(ab.jacobian_det().unwrap(), &p);
        let rhs = e(ma.jacobian_det().unwrap(), &bp) * e(mb.jacobian_det().unwrap(), &p);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ratfunc_reduce_matches_eval(
        a in poly(2, 2, 4),
        b in poly(2, 2, 4),
        c in poly(2, 2, 3),
        p in point(2),
    ) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let r = RationalFunction::new(&a * &c, &b * &c).unwrap();
        let plain = RationalFunction::new(a.clone(), b.clone()).unwrap();
        prop_assert!(poly_gcd(r.num(), r.den()).is_constant());
        prop_assert!(r == plain);
        let bv = b.clone().with_nvars(2).eval(&p).unwrap();
        prop_assume!(!bv.is_zero());
        let want = a.clone().with_nvars(2).eval(&p).unwrap() / bv;
        prop_assert_eq!(plain.eval(&p), Some(want.clone()));
        // the reduced fraction is defined wherever the unreduced one is
        let cv = c.clone().with_nvars(2).eval(&p).unwrap();
        if !cv.is_zero() {
            prop_assert_eq!(r.eval(&p), Some(want));
        }
    }

    #[test]
    fn ratfunc_field_ops(
        a in poly(2, 2, 3),
        b in poly(2, 2, 3),
        c in poly(2, 2, 3),
        d in poly(2, 2, 3),
        p in point(2),
    ) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let r = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let s = RationalFunction::new(c.clone(), d.clone()).unwrap();
        let e = |q: &Poly| q.clone().with_nvars(2).eval(&p).unwrap();
        prop_assume!(!e(&b).is_zero() && !e(&d).is_zero());
        let (rv, sv) = (e(&a) / e(&b), e(&c) / e(&d));
        prop_assert_eq!(r.add(&s).eval(&p), Some(&rv + &sv));
        prop_assert_eq!(r.mul(&s).eval(&p), Some(&rv * &sv));
        for t in [r.add(&s), r.mul(&s), r.sub(&s)] {
            prop_assert!(poly_gcd(t.num(), t.den()).is_constant());
        }
        prop_assert!(r.sub(&r).is_zero());
        if !a.is_zero() {
            prop_assert!(r.div(&r).unwrap() == RationalFunction::constant(Rational::one()));
        }
    }

    #[test]
    fn print_is_injective(a in poly(3, 3, 4), b in poly(3, 3, 4)) {
        prop_assert_eq!(print_canonical(&a) == print_canonical(&b), a == b);
    }

    #[test]
    fn rational_parse_round_trip(q in small_rational()) {
        let text = polycert::parser::rational_text(&q);
        prop_assert_eq!(polycert::parser::parse_rational(&text).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn print_parse_round_trip(a in poly(3, 4, 6)) {
        let text = print_canonical(&a);
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(print_canonical(&back), text);
    }
}
