use polycert::maps::{builtin, PolyMap};
use polycert::systems::{fiber, staged_fiber, FiberMode, NewtonOptions};
use polycert::{rat, Rational};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-6
}

fn stage_one_reals(t: [i64; 2]) -> Vec<f64> {
    let phi = builtin("phi").unwrap();
    let bf = builtin("F").unwrap();
    let s = staged_fiber(
        &phi,
        &bf,
        &[rat(t[0]), rat(t[1])],
        &NewtonOptions::default(),
    )
    .unwrap();
    assert!(s.stage_one.iter().all(|w| w.point[1].abs() < 1e-6));
    s.stage_one.iter().map(|w| w.point[0]).collect()
}

#[test]
fn staged_over_two() {
    let mut roots = stage_one_reals([2, 0]);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| close(*a, *b));
    assert_eq!(roots.len(), 2, "{roots:?}");
    assert!(close(roots[0], -1.0) && close(roots[1], 2.0));

    let phi = builtin("phi").unwrap();
    let bf = builtin("F").unwrap();
    let s = staged_fiber(&phi, &bf, &[rat(2), rat(0)], &NewtonOptions::default()).unwrap();
    assert!(!s.result.is_empty());
    let f = builtin("f").unwrap();
    for p in &s.result.approximations {
        let v = f
            .eval(
                &p.point
                    .map(|c| polycert::scalar::f64_to_rational(c).unwrap()),
            )
            .unwrap();
        let v: Vec<f64> = v.iter().map(polycert::scalar::rational_to_f64).collect();
        assert!((v[0] - 2.0).abs() < 1e-4 && v[1].abs() < 1e-4, "{v:?}");
    }
}

#[test]
fn staged_over_origin() {
    let mut roots = stage_one_reals([0, 0]);
    roots.sort_by(f64::total_cmp);
    let s3 = 3f64.sqrt();
    assert_eq!(roots.len(), 3);
    assert!(close(roots[0], -s3) && close(roots[1], 0.0) && close(roots[2], s3));
}

#[test]
fn staged_with_identity_outer() {
    let id = PolyMap::identity(2);
    let bf = builtin("F").unwrap();
    let opts = NewtonOptions::default();
    let t: [Rational; 2] = [rat(2), rat(0)];
    let staged = staged_fiber(&id, &bf, &t, &opts).unwrap();
    let direct = fiber(&bf, &t, FiberMode::Approximate, &opts).unwrap();
    assert_eq!(staged.result.count(), direct.count());
    for (a, b) in staged
        .result
        .approximations
        .iter()
        .zip(&direct.approximations)
    {
        assert!(close(a.point[0], b.point[0]) && close(a.point[1], b.point[1]));
    }
}

#[test]
fn exact_counts_bound_approximate_counts() {
    let bf = builtin("F").unwrap();
    let opts = NewtonOptions::default();
    for a in -2..=2 {
        for b in -2..=2 {
            let t = [rat(a), rat(b)];
            let e = fiber(&bf, &t, FiberMode::Exact, &opts).unwrap();
            let n = fiber(&bf, &t, FiberMode::Approximate, &opts).unwrap();
            assert!(
                n.count() <= e.count(),
                "({a},{b}): approx {} > exact {}",
                n.count(),
                e.count()
            );
        }
    }
}

#[test]
fn exact_mode_needs_eligible_map() {
    let f = builtin("f").unwrap();
    assert!(fiber(
        &f,
        &[rat(0), rat(0)],
        FiberMode::Exact,
        &NewtonOptions::default()
    )
    .is_err());
}

#[test]
fn exact_solutions_shrink_to_the_fiber() {
    let bf = builtin("F").unwrap();
    let t = [rat(2), rat(0)];
    let r = fiber(&bf, &t, FiberMode::Exact, &NewtonOptions::default()).unwrap();
    for s in &r.solutions {
        let mut prev: Option<Rational> = None;
        for k in [4u32, 12, 24] {
            let w = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(k));
            let b = s.refine(&w).unwrap();
            let v = bf.eval(&b.midpoint()).unwrap();
            let res = num_traits::Signed::abs(&(&v[0] - &t[0]))
                .max(num_traits::Signed::abs(&(&v[1] - &t[1])));
            if let Some(p) = &prev {
                assert!(&res <= p);
            }
            prev = Some(res);
        }
    }
}
