//! Multivariate gcd over the rationals in up to three variables.
//!
//! Recursive primitive PRS on a main variable with content recursion, plus a
//! cheap modular coprimality test that settles the common case.

use num_integer::Integer as _;
use num_traits::One;

use crate::poly::Var;
use crate::{Integer, Poly, Rational};

/// Monic (in graded-lex order) gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars().max(b.nvars());
    if a.is_zero() {
        return monic(b).with_nvars(n);
    }
    if b.is_zero() {
        return monic(a).with_nvars(n);
    }
    if a.is_constant() || b.is_constant() || coprime_modular(a, b) {
        return Poly::one().with_nvars(n);
    }
    if b.div_exact(a).is_some() {
        return monic(a).with_nvars(n);
    }
    if a.div_exact(b).is_some() {
        return monic(b).with_nvars(n);
    }
    monic(&gcd_rec(a, b)).with_nvars(n)
}

/// Scales `p` so its graded-lex leading coefficient is 1.
pub fn monic(p: &Poly) -> Poly {
    match p.leading_coeff() {
        Some(c) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

fn main_var(p: &Poly) -> Option<Var> {
    Var::ALL.iter().rev().copied().find(|&v| p.degree_in(v) > 0)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let v = match (main_var(a), main_var(b)) {
        (Some(x), Some(y)) => x.max(y),
        _ => return Poly::one(),
    };
    if a.degree_in(v) == 0 {
        return gcd_rec(a, &content(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd_rec(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut r0 = a.coefficients_in(v);
    let mut r1 = b.coefficients_in(v);
    r0 = primitive(&r0, &ca);
    r1 = primitive(&r1, &cb);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !(r1.len() == 1 && r1[0].is_zero()) {
        if r1.len() == 1 {
            // non-zero constant in v
            return c;
        }
        let r = prem(&r0, &r1);
        r0 = r1;
        r1 = if r.iter().all(Poly::is_zero) {
            vec![Poly::zero()]
        } else {
            let cr = coeffs_content(&r);
            primitive(&r, &cr)
        };
    }
    let g = Poly::from_coefficients_in(&r0, v);
    monic(&(&c * &g))
}

fn trim(mut c: Vec<Poly>) -> Vec<Poly> {
    while c.len() > 1 && c.last().is_some_and(Poly::is_zero) {
        c.pop();
    }
    c
}

/// Pseudo-remainder of coefficient vectors (ascending in the main variable).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c * &lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(bc * &lr);
        }
        next.pop();
        r = trim(next);
        if r.is_empty() {
            r.push(Poly::zero());
        }
    }
    r
}

fn coeffs_content(c: &[Poly]) -> Poly {
    c.iter().fold(Poly::zero(), |acc, p| gcd_rec(&acc, p))
}

/// Gcd of the coefficients of `p` as a polynomial in `v`.
fn content(p: &Poly, v: Var) -> Poly {
    coeffs_content(&p.coefficients_in(v))
}

fn primitive(c: &[Poly], cont: &Poly) -> Vec<Poly> {
    if cont.is_constant() {
        let k = cont.constant_value().unwrap_or_else(Rational::one);
        return c.iter().map(|p| p.scale(&k.recip())).collect();
    }
    c.iter()
        .map(|p| {
            p.div_exact(cont)
                .expect("content divides every coefficient")
        })
        .collect()
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn int_mod(n: &Integer) -> u64 {
    let p = Integer::from(P);
    let r = n.mod_floor(&p);
    r.try_into().expect("residue fits in u64")
}

fn rat_mod(r: &Rational) -> Option<u64> {
    let d = int_mod(r.denom());
    (d != 0).then(|| mulmod(int_mod(r.numer()), inv(d)))
}

/// `p` with every variable except `main` replaced by a fixed residue, as
/// ascending coefficients mod `P`. `None` when a denominator vanishes mod
/// `P`.
fn specialize_mod(p: &Poly, main: Var, point: &[u64; 3]) -> Option<Vec<u64>> {
    let i = main.index();
    let mut out = vec![0u64; p.degree_in(main) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = rat_mod(c)?;
        for (j, &e) in m.0.iter().enumerate() {
            if j != i && e > 0 {
                t = mulmod(t, powmod(point[j], e as u64));
            }
        }
        let k = m.0[i] as usize;
        out[k] = (out[k] + t) % P;
    }
    Some(out)
}

fn trim_mod(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn gcd_degree_mod(a: Vec<u64>, b: Vec<u64>) -> usize {
    let mut a = trim_mod(a);
    let mut b = trim_mod(b);
    while !b.is_empty() {
        let lb_inv = inv(*b.last().expect("non-empty"));
        while a.len() >= b.len() {
            let q = mulmod(*a.last().expect("non-empty"), lb_inv);
            let shift = a.len() - b.len();
            for (k, &bc) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + P - mulmod(q, bc)) % P;
            }
            a = trim_mod(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True only if `gcd(a, b)` is provably constant. Each shared variable is
/// checked as main variable at a fixed specialization of the others; with
/// leading coefficients non-zero there, the image gcd degree bounds the true
/// one.
fn coprime_modular(a: &Poly, b: &Poly) -> bool {
    const POINT: [u64; 3] = [1_234_567_891, 2_718_281_829, 3_141_592_653];
    let shared: Vec<Var> = Var::ALL
        .iter()
        .copied()
        .filter(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0)
        .collect();
    if shared.is_empty() {
        // A common factor must involve a variable present in both.
        return true;
    }
    shared.into_iter().any(|v| {
        let (Some(sa), Some(sb)) = (specialize_mod(a, v, &POINT), specialize_mod(b, v, &POINT))
        else {
            return false;
        };
        let full =
            |s: &[u64], p: &Poly| s.len() == p.degree_in(v) as usize + 1 && s.last() != Some(&0);
        full(&sa, a) && full(&sb, b) && gcd_degree_mod(sa, sb) == 0
    })
}
