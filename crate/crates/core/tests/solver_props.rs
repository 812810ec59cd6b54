mod common;

use std::collections::BTreeSet;

use common::{config, point, poly, small_rational};
use num_traits::{Signed, Zero};
use polycert::certify::{curve_emptiness, nonvanishing_sign, verify_sos, Sign, Verdict};
use polycert::realroots::{isolate_roots, sturm_count};
use polycert::systems::{resultant, solve_bivariate, SolutionBox};
use polycert::{rat, ratio, Interval, Poly, RatBox, RatInterval, RatUPoly, Rational, Var};
use proptest::prelude::*;

fn x() -> Poly {
    Poly::var(Var::X)
}

fn y() -> Poly {
    Poly::var(Var::Y)
}

fn c(r: &Rational) -> Poly {
    Poly::constant(r.clone())
}

/// Distinct roots on the half-integer lattice in `[-4, 4]`.
fn planted_roots() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(-8i64..=8, 1..=5)
        .prop_map(|s| s.into_iter().map(|k| ratio(k, 2)).collect())
}

fn from_roots(roots: &[Rational], quad: i64) -> RatUPoly {
    let mut f = RatUPoly::constant(rat(1));
    for r in roots {
        f = &f * &RatUPoly::linear_root(r.clone());
    }
    // a factor with no real roots
    &f * &RatUPoly::new(vec![rat(quad), rat(0), rat(1)])
}

fn interval(a: Rational, b: Rational) -> RatInterval {
    Interval::spanning(a, b)
}

fn sign_changes(f: &RatUPoly, a: &Rational, b: &Rational, step: &Rational) -> usize {
    let mut n = 0;
    let mut prev = f.eval(a).signum();
    let mut t = a + step;
    while &t < b {
        let s = f.eval(&t).signum();
        if !s.is_zero() {
            if !prev.is_zero() && s != prev {
                n += 1;
            }
            prev = s;
        }
        t += step;
    }
    let s = f.eval(b).signum();
    if !s.is_zero() && !prev.is_zero() && s != prev {
        n += 1;
    }
    n
}

fn encloses_zero(b: &SolutionBox) -> bool {
    b.system().iter().all(|p| {
        p.clone()
            .with_nvars(2)
            .eval_interval(b.bounds())
            .unwrap()
            .contains_zero()
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn isolation_finds_planted_roots(
        factors in prop::collection::btree_set((-12i64..=12, 1i64..=3), 1..=5),
    ) {
        // distinct roots n/d of products of d x - n
        let roots: BTreeSet<Rational> = factors.iter().map(|&(n, d)| ratio(n, d)).collect();
        let f = roots.iter().fold(RatUPoly::constant(rat(1)), |f, r| &f * &RatUPoly::linear_root(r.clone()));
        let iso = isolate_roots(&f).unwrap();
        prop_assert_eq!(iso.len(), roots.len());
        prop_assert!(iso.len() <= f.deg());
        for r in &roots {
            prop_assert_eq!(iso.iter().filter(|i| i.lo() <= r && r <= i.hi()).count(), 1);
        }
        for i in &iso {
            let changes = i.exact().is_some_and(|r| f.eval(r).is_zero())
                || (f.eval(i.lo()) * f.eval(i.hi())).is_negative();
            prop_assert!(changes);
        }
        for w in iso.windows(2) {
            prop_assert!(w[0].hi() < w[1].lo() || (w[0].hi() == w[1].lo() && w[0].exact().is_none()));
        }
    }

    #[test]
    fn sturm_agrees_with_sampling(roots in planted_roots(), quad in 1i64..5, a in -20i64..20, len in 1i64..20) {
        let f = from_roots(&roots, quad);
        // endpoints on odd sixteenths never hit a planted root
        let (lo, hi) = (ratio(2 * a + 1, 8), ratio(2 * (a + len) + 1, 8));
        let count = sturm_count(&f, &interval(lo.clone(), hi.clone())).unwrap();
        let planted = roots.iter().filter(|r| &lo < *r && *r < &hi).count();
        prop_assert_eq!(count, planted);
        prop_assert_eq!(sign_changes(&f, &lo, &hi, &ratio(1, 8)), planted);
    }
}

proptest! {
    #![proptest_config(config(100))]

    /// Over the Cauchy bound the Sturm count matches sign sampling at 1e-3.
    #[test]
    fn sturm_matches_dense_sampling(roots in planted_roots(), quad in 1i64..5) {
        let f = from_roots(&roots, quad);
        let lc = f.lc().unwrap().clone();
        let bound = f.coeffs().iter().map(|c| (c / &lc).abs()).fold(rat(0), |m, c| m.max(c)) + rat(1);
        let count = sturm_count(&f, &interval(-bound.clone(), bound)).unwrap();
        let fl: Vec<f64> = f.coeffs().iter().map(polycert::scalar::rational_to_f64).collect();
        let eval = |t: f64| fl.iter().rev().fold(0.0, |acc, c| acc * t + c);
        // roots lie in [-4, 4] and are simple, so sampling off the
        // half-integer lattice sees every sign change
        let mut changes = 0;
        let mut prev = eval(-4.2).signum();
        for k in 1..=8400 {
            let s = eval(-4.2 + k as f64 * 1e-3 + 1e-4).signum();
            if s != prev {
                changes += 1;
                prev = s;
            }
        }
        prop_assert_eq!(count, changes);
        prop_assert_eq!(count, roots.len());
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn interval_ops_enclose(
        a in small_rational(), b in small_rational(), p in small_rational(), q in small_rational(),
        s in 0i64..=8, t in 0i64..=8, n in 0u32..5,
    ) {
        let (ia, ib) = (interval(a.clone(), b.clone()), interval(p.clone(), q.clone()));
        let u = ia.lo() + (ia.hi() - ia.lo()) * ratio(s, 8);
        let v = ib.lo() + (ib.hi() - ib.lo()) * ratio(t, 8);
        prop_assert!(ia.add(&ib).contains(&(&u + &v)));
        prop_assert!(ia.sub(&ib).contains(&(&u - &v)));
        prop_assert!(ia.mul(&ib).contains(&(&u * &v)));
        prop_assert!(ia.pow(n).contains(&num_traits::pow(u.clone(), n as usize)));
        if let Some(d) = ia.div(&ib) {
            prop_assert!(!v.is_zero());
            prop_assert!(d.contains(&(&u / &v)));
        }
    }

    #[test]
    fn interval_eval_encloses(f in poly(2, 4, 6), c0 in point(2), w in 0i64..=8, s in 0i64..=8, t in 0i64..=8) {
        let width = ratio(w, 4);
        let bx = RatBox::new(vec![
            interval(c0[0].clone(), &c0[0] + &width),
            interval(c0[1].clone(), &c0[1] + &width),
        ]);
        let p = [&c0[0] + &width * ratio(s, 8), &c0[1] + &width * ratio(t, 8)];
        let f = f.with_nvars(2);
        prop_assert!(f.eval_interval(&bx).unwrap().contains(&f.eval(&p).unwrap()));
    }

    #[test]
    fn resultant_vanishes_at_planted_roots(
        a in small_rational(), b in small_rational(),
        u in poly(2, 2, 3), v in poly(2, 2, 3), s in poly(2, 2, 3), t in poly(2, 2, 3),
    ) {
        let (dx, dy) = (&x() - &c(&a), &y() - &c(&b));
        let f = &(&dx * &u) + &(&dy * &v);
        let g = &(&dx * &s) + &(&dy * &t);
        let at = [a.clone(), b.clone()];
        for v in [Var::X, Var::Y] {
            if let Ok(r) = resultant(&f, &g, v) {
                prop_assert!(r.with_nvars(2).eval(&at).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn sos_sums_are_nonnegative(parts in prop::collection::vec(poly(2, 2, 3), 1..4), p in point(2)) {
        let g = parts.iter().fold(Poly::zero(), |acc, h| &acc + &(h * h));
        prop_assert!(verify_sos(&g, &parts));
        prop_assert!(!verify_sos(&(&g + &Poly::one()), &parts));
        prop_assert!(!g.with_nvars(2).eval(&p).unwrap().is_negative());
    }
}

proptest! {
    #![proptest_config(config(32))]

    /// `(x - a1)(x - a2) + s (y - m x - k)` and `y - m x - k`, sheared by
    /// `x -> x + h y`: exactly two rational solutions.
    #[test]
    fn solver_finds_planted_solutions(
        a1 in -4i64..=4, gap in 1i64..=4, m in -2i64..=2, k in -3i64..=3, s in -2i64..=2, h in -1i64..=1,
    ) {
        let (a1, a2) = (rat(a1), rat(a1 + gap));
        let line = &(&y() - &(&c(&rat(m)) * &x())) - &c(&rat(k));
        let f = &(&(&x() - &c(&a1)) * &(&x() - &c(&a2))) + &(&c(&rat(s)) * &line);
        let shear = [&x() + &(&c(&rat(h)) * &y()), y()];
        let f = f.compose(&shear).unwrap();
        let g = line.compose(&shear).unwrap();
        let sols = solve_bivariate(&f, &g).unwrap();
        prop_assert_eq!(sols.len(), 2);
        for a in [&a1, &a2] {
            let yv = &rat(m) * a + rat(k);
            let p = [a - &rat(h) * &yv, yv];
            prop_assert_eq!(sols.iter().filter(|b| b.contains(&p)).count(), 1);
        }
        prop_assert!(sols[0].disjoint_from(&sols[1]));
        for b in &sols {
            prop_assert!(encloses_zero(b));
            prop_assert!(encloses_zero(&b.refine(&ratio(1, 1 << 20)).unwrap()));
        }
    }

    /// `x^2 - n` and `y - x - k` with `n` not a square: two irrational solutions.
    #[test]
    fn solver_isolates_irrational_solutions(n in prop::sample::select(vec![2i64, 3, 5, 6, 7, 8, 10]), k in -3i64..=3) {
        let f = &(&x() * &x()) - &c(&rat(n));
        let g = &(&y() - &x()) - &c(&rat(k));
        let sols = solve_bivariate(&f, &g).unwrap();
        prop_assert_eq!(sols.len(), 2);
        let mut signs = BTreeSet::new();
        for b in &sols {
            let (lo, hi) = (b.x().lo(), b.x().hi());
            prop_assert!(lo.signum() == hi.signum());
            let (l2, h2) = (lo * lo, hi * hi);
            prop_assert!(l2.clone().min(h2.clone()) <= rat(n) && rat(n) <= l2.max(h2));
            signs.insert(lo.is_positive());
            prop_assert!(encloses_zero(&b.refine(&ratio(1, 1 << 20)).unwrap()));
        }
        prop_assert_eq!(signs.len(), 2);
    }

    /// Shifted ellipses `a (x - p)^2 + b (y - q)^2 + e`.
    #[test]
    fn ellipse_certificates(
        a in 1i64..=4, b in 1i64..=4, p in small_rational(), q in small_rational(), e in prop::sample::select(vec![-3i64, -1, 1, 2]),
        flip in any::<bool>(), seed in 0u64..4, samples in prop::collection::vec(point(2), 1000),
    ) {
        let dx = &x() - &c(&p);
        let dy = &y() - &c(&q);
        let mut g = &(&c(&rat(a)) * &(&dx * &dx)) + &(&c(&rat(b)) * &(&dy * &dy));
        g = &g + &c(&rat(e));
        if flip {
            g = -g;
        }
        let cert = nonvanishing_sign(&g, None, seed).unwrap();
        prop_assert!(polycert::certify::replay(&cert).unwrap());
        match &cert.verdict {
            Verdict::NeverVanishes(sign) => {
                prop_assert!(e > 0);
                prop_assert_eq!(*sign, if flip { Sign::Negative } else { Sign::Positive });
                for s in &samples {
                    let v = g.clone().with_nvars(2).eval(s).unwrap();
                    prop_assert_eq!(v.is_positive(), *sign == Sign::Positive);
                    prop_assert!(!v.is_zero());
                }
            }
            Verdict::Vanishes(_) => prop_assert!(e < 0),
        }
        let plain = curve_emptiness(&g, seed).unwrap();
        prop_assert_eq!(plain.verdict.is_never_vanishes(if flip { Sign::Negative } else { Sign::Positive }), e > 0);
    }
}
