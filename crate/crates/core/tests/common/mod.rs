#![allow(dead_code)]

use polycert::{rat, ratio, Monomial, Poly, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed seed, no persistence files: every run sees the same cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-5i64..=5).prop_map(rat)
}

/// Sparse polynomial in the first `nvars` variables, total degree <= `deg`.
pub fn poly(nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Poly> {
    let mono = (0..=deg, 0..=deg, 0..=deg).prop_map(move |(a, b, c)| {
        let mut e = [a, b, c];
        for v in e.iter_mut().skip(nvars) {
            *v = 0;
        }
        while e.iter().sum::<u32>() > deg {
            let k = e.iter().position(|&v| v > 0).unwrap();
            e[k] -= 1;
        }
        Monomial(e)
    });
    prop::collection::vec((mono, small_int()), 0..=terms)
        .prop_map(move |ts| Poly::from_terms(ts).with_nvars(nvars))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n)
}
