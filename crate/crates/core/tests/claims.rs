use num_traits::Signed;
use polycert::claims::*;
use polycert::maps::{builtin, PolyMap};
use polycert::systems::SolveError;
use polycert::{rat, ratio, Poly, Rational, Var};

fn verdict(r: &ClaimReport, name: &str) -> CheckVerdict {
    r.check(name)
        .unwrap_or_else(|| panic!("missing check {name}"))
        .verdict
}

#[test]
fn theorem1_passes_with_five_checks() {
    let r = verify_theorem1();
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "jacobian_nonvanishing",
            "fiber_empty_over_(1,0)",
            "fiber_empty_over_(-1,0)",
            "witness_non_injective",
            "spot_check_surjectivity"
        ]
    );
    for c in &r.checks {
        assert_eq!(c.verdict, CheckVerdict::Pass, "{}: {}", c.name, c.detail);
    }
    assert_eq!(r.overall(), CheckVerdict::Pass);
    match &r.check("jacobian_nonvanishing").unwrap().evidence {
        Evidence::Certificate(c) => assert!(polycert::certify::replay(c).unwrap()),
        e => panic!("unexpected evidence {}", e.kind()),
    }
}

#[test]
fn vanishing_jacobian_fails_theorem1() {
    let cfg = ClaimConfig {
        base: builtin("psi").unwrap(),
        // keep the run small: the check under test does not use these
        witness_grid: GridSpec::new(rat(0), rat(0), rat(0), rat(0), rat(1)).unwrap(),
        spot_grid: vec![[rat(0), rat(1)]],
        ..ClaimConfig::default()
    };
    let r = ClaimContext::new(cfg).verify_theorem1();
    assert_eq!(verdict(&r, "jacobian_nonvanishing"), CheckVerdict::Fail);
    assert_eq!(r.overall(), CheckVerdict::Fail);
}

#[test]
fn omitted_point_in_spot_grid_fails() {
    let cfg = ClaimConfig {
        spot_grid: vec![[rat(0), rat(0)], [rat(1), rat(0)]],
        ..ClaimConfig::default()
    };
    let r = ClaimContext::new(cfg).verify_theorem1();
    assert_eq!(verdict(&r, "spot_check_surjectivity"), CheckVerdict::Fail);
    assert!(r
        .check("spot_check_surjectivity")
        .unwrap()
        .detail
        .contains("(1, 0)"));
}

#[test]
fn identity_has_no_witness() {
    let grid = GridSpec::new(rat(-1), rat(1), rat(-1), rat(1), ratio(1, 2)).unwrap();
    match find_witness(&PolyMap::identity(2), &grid) {
        Err(ClaimError::WitnessNotFound { .. }) => {}
        other => panic!("expected WitnessNotFound, got {other:?}"),
    }
}

#[test]
fn witness_survives_refinement_and_identity_transfer() {
    let w = find_witness(&builtin("F").unwrap(), &GridSpec::default()).unwrap();
    assert!(w.is_valid());
    let same = transfer_witness(&w, &PolyMap::identity(2)).unwrap();
    assert_eq!(same.target, w.target);
    assert_eq!(same.map_name, w.map_name);

    let fine = w.refine(&ratio(1, 100_000_000)).unwrap();
    assert!(fine.is_valid());
    let f = builtin("F").unwrap();
    for b in &fine.points {
        assert!(b.width() <= ratio(1, 100_000_000));
        let img = f.eval(&b.midpoint()).unwrap();
        for k in 0..2 {
            let rel = (&img[k] - &w.target[k]).abs()
                / (Rational::from_integer(1.into()) + w.target[k].abs());
            assert!(rel < ratio(1, 1000), "image {k} off target");
        }
    }

    let phi = builtin("phi").unwrap();
    let t = transfer_witness(&w, &phi).unwrap();
    assert_eq!(t.target.to_vec(), phi.eval(&w.target).unwrap());
}

#[test]
fn grid_parse_and_errors() {
    let g = GridSpec::parse("-3,3,-3,3,1/2").unwrap();
    assert_eq!(g, GridSpec::default());
    assert_eq!(g.points().len(), 13 * 13);
    assert_eq!(g.points()[0], [rat(-3), rat(-3)]);
    assert!(GridSpec::parse("0,1,0,1,0").is_err());
    assert!(GridSpec::parse("1,0,0,1,1").is_err());
    assert!(GridSpec::parse("0,1,0").is_err());
    assert!(matches!(
        find_witness(&builtin("f").unwrap(), &g),
        Err(ClaimError::Solve(SolveError::Ineligible(_)))
    ));
}

#[test]
fn prop3_fails_only_on_the_printed_identity() {
    let r = verify_prop3();
    for c in &r.checks {
        let want = if c.name == "sos_identity" {
            CheckVerdict::Fail
        } else {
            CheckVerdict::Pass
        };
        assert_eq!(c.verdict, want, "{}: {}", c.name, c.detail);
    }
    match &r.check("sos_parts_common_zeros").unwrap().evidence {
        Evidence::Solutions { solutions, .. } => {
            assert_eq!(solutions.len(), 1);
            assert_eq!(solutions[0].exact_point(), Some([rat(0), rat(0)]));
        }
        e => panic!("unexpected evidence {}", e.kind()),
    }
}

#[test]
fn ftilde_second_component_at_origin() {
    let ft = builtin("ftilde").unwrap();
    assert_eq!(ft.eval(&[rat(0), rat(0)]).unwrap()[1], rat(2));
    let q = Poly::var(Var::X) * Poly::var(Var::Y) + Poly::constant(rat(1));
    let second = &q * &q + Poly::var(Var::X) * Poly::var(Var::X);
    assert_eq!(second.eval(&[rat(1), rat(0)]).unwrap(), rat(2));
}

#[test]
fn example4_origin_sample_is_exact() {
    let r = verify_example4();
    assert_eq!(r.overall(), CheckVerdict::Pass);
    match &r.check("lift_surjectivity_spot_check").unwrap().evidence {
        Evidence::Samples(s) => {
            assert_eq!(s.len(), 27);
            let o = s
                .iter()
                .find(|s| s.target == [rat(0), rat(0), rat(0)])
                .unwrap();
            assert_eq!(o.preimage, Some([rat(0), rat(0), rat(0)]));
            assert_eq!(o.residual, Some(rat(0)));
        }
        e => panic!("unexpected evidence {}", e.kind()),
    }
}

#[test]
fn prop2_passes() {
    let r = verify_prop2();
    for c in &r.checks {
        assert_eq!(c.verdict, CheckVerdict::Pass, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = ClaimContext::new(ClaimConfig::with_seed(7)).verify(ClaimId::Prop3);
    let b = ClaimContext::new(ClaimConfig::with_seed(7)).verify(ClaimId::Prop3);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}
