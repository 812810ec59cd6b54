//! Global sign certificates for bivariate polynomials on the real plane.
//!
//! Two routes: an exact sum-of-squares identity whose parts have no common
//! real zero, or the distance-critical-point test. For a center `c` off the
//! curve `g = 0`, a nonempty real zero set attains its minimal distance to
//! `c`, and there `L = (x - c1) g_y - (y - c2) g_x` vanishes. So an empty
//! real solution set of `{g, L}` means `g` has the sign of `g(c)` on the
//! whole plane.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::maps::{builtin, psi_sos_parts_verified};
use crate::poly::Var;
use crate::systems::{solve_bivariate, SolutionBox, SolveError};
use crate::{ratio, Poly, Rational};

/// Centers tried before giving up on a polynomial.
pub const MAX_CENTERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("expected a polynomial in x and y only")]
    NotBivariate,
    #[error("every one of {0} centers gave a positive-dimensional critical system")]
    DegenerateCenter(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    fn of(v: &Rational) -> Option<Sign> {
        if v.is_positive() {
            Some(Sign::Positive)
        } else if v.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug)]
pub enum ZeroWitness {
    Point([Rational; 2]),
    Box(SolutionBox),
}

impl ZeroWitness {
    fn from_box(b: SolutionBox) -> Self {
        match b.exact_point() {
            Some(p) => ZeroWitness::Point(p),
            None => ZeroWitness::Box(b),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    NeverVanishes(Sign),
    Vanishes(ZeroWitness),
}

impl Verdict {
    pub fn is_never_vanishes(&self, sign: Sign) -> bool {
        matches!(self, Verdict::NeverVanishes(s) if *s == sign)
    }

    pub fn same_outcome(&self, other: &Verdict) -> bool {
        match (self, other) {
            (Verdict::NeverVanishes(a), Verdict::NeverVanishes(b)) => a == b,
            (
                Verdict::Vanishes(ZeroWitness::Point(a)),
                Verdict::Vanishes(ZeroWitness::Point(b)),
            ) => a == b,
            (Verdict::Vanishes(ZeroWitness::Box(a)), Verdict::Vanishes(ZeroWitness::Box(b))) => {
                a.bounds() == b.bounds()
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Sos,
    DistanceCritical,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Sos => "sos",
            Method::DistanceCritical => "distance_critical",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignCertificate {
    pub polynomial: Poly,
    pub verdict: Verdict,
    pub method: Method,
    pub seed: u64,
    /// Distance-critical only.
    pub center: Option<[Rational; 2]>,
    /// `{g, L}` for distance-critical certificates, the first two parts
    /// for SOS certificates.
    pub auxiliary_system: Option<[Poly; 2]>,
    pub sos_parts: Option<Vec<Poly>>,
}

/// `g == sum parts_i^2` as an exact identity.
pub fn verify_sos(g: &Poly, parts: &[Poly]) -> bool {
    let sum = parts.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p));
    &sum == g
}

/// Decompositions on record for builtin polynomials.
pub fn known_sos(g: &Poly) -> Option<Vec<Poly>> {
    let psi = builtin("psi").ok()?;
    let j = psi.jacobian_det().ok()?;
    (&j == g).then(psi_sos_parts_verified)
}

/// Deterministic center sequence: `(0,0)`, `(1/2,0)`, then small random
/// rationals drawn from `seed`.
pub fn centers(seed: u64) -> impl Iterator<Item = [Rational; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixed = [[ratio(0, 1), ratio(0, 1)], [ratio(1, 2), ratio(0, 1)]];
    fixed.into_iter().chain(std::iter::repeat_with(move || {
        let mut r = || ratio(rng.gen_range(-16..=16), rng.gen_range(1..=16));
        [r(), r()]
    }))
}

/// `(x - c1) g_y - (y - c2) g_x`.
pub fn distance_critical_poly(g: &Poly, c: &[Rational; 2]) -> Poly {
    let x = &Poly::var(Var::X) - &Poly::constant(c[0].clone());
    let y = &Poly::var(Var::Y) - &Poly::constant(c[1].clone());
    (&(&x * &g.partial(Var::Y)) - &(&y * &g.partial(Var::X))).with_nvars(2)
}

fn check_input(g: &Poly) -> Result<Poly, CertifyError> {
    if g.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    if g.used_vars() > 2 {
        return Err(CertifyError::NotBivariate);
    }
    Ok(g.clone().with_nvars(2))
}

/// One distance-critical attempt at a fixed center. `Ok(None)` means the
/// critical system is positive-dimensional for this center.
pub fn distance_critical_at(
    g: &Poly,
    center: &[Rational; 2],
    seed: u64,
) -> Result<Option<SignCertificate>, CertifyError> {
    let g = check_input(g)?;
    let cert = |verdict, aux| SignCertificate {
        polynomial: g.clone(),
        verdict,
        method: Method::DistanceCritical,
        seed,
        center: Some(center.clone()),
        auxiliary_system: aux,
        sos_parts: None,
    };
    let gc = g.eval(center).expect("bivariate");
    let Some(sign) = Sign::of(&gc) else {
        return Ok(Some(cert(
            Verdict::Vanishes(ZeroWitness::Point(center.clone())),
            None,
        )));
    };
    if g.is_constant() {
        return Ok(Some(cert(Verdict::NeverVanishes(sign), None)));
    }
    let l = distance_critical_poly(&g, center);
    if l.is_zero() {
        return Ok(None);
    }
    let aux = Some([g.clone(), l.clone()]);
    match solve_bivariate(&g, &l) {
        Ok(sols) => {
            let verdict = match sols.into_iter().next() {
                None => Verdict::NeverVanishes(sign),
                Some(b) => Verdict::Vanishes(ZeroWitness::from_box(b)),
            };
            Ok(Some(cert(verdict, aux)))
        }
        Err(SolveError::NonZeroDimensional) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn curve_emptiness(g: &Poly, seed: u64) -> Result<SignCertificate, CertifyError> {
    for c in centers(seed).take(MAX_CENTERS) {
        if let Some(cert) = distance_critical_at(g, &c, seed)? {
            return Ok(cert);
        }
    }
    Err(CertifyError::DegenerateCenter(MAX_CENTERS))
}

/// SOS route when a decomposition is supplied or on record, otherwise the
/// distance-critical test.
pub fn nonvanishing_sign(
    g: &Poly,
    parts: Option<&[Poly]>,
    seed: u64,
) -> Result<SignCertificate, CertifyError> {
    let g = check_input(g)?;
    let parts = parts.map(<[Poly]>::to_vec).or_else(|| known_sos(&g));
    if let Some(parts) = parts {
        if let Some(cert) = sos_certificate(&g, &parts, seed)? {
            return Ok(cert);
        }
    }
    curve_emptiness(&g, seed)
}

/// The system whose real solutions are the common real zeros of `parts`:
/// the parts themselves when there are two, otherwise the first part and
/// the sum of squares of the rest.
pub fn common_zero_system(parts: &[Poly]) -> Option<[Poly; 2]> {
    let (first, rest) = parts.split_first()?;
    let second = match rest {
        [] => return None,
        [b] => b.clone(),
        _ => rest.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p)),
    };
    Some([first.clone().with_nvars(2), second.with_nvars(2)])
}

/// `Ok(None)` when the parts do not certify anything: the identity fails,
/// or the common-zero system cannot be solved exactly.
pub fn sos_certificate(
    g: &Poly,
    parts: &[Poly],
    seed: u64,
) -> Result<Option<SignCertificate>, CertifyError> {
    if !verify_sos(g, parts) {
        return Ok(None);
    }
    let Some([a, b]) = common_zero_system(parts) else {
        return Ok(None);
    };
    let verdict = match solve_bivariate(&a, &b) {
        Ok(sols) => match sols.into_iter().next() {
            None => Verdict::NeverVanishes(Sign::Positive),
            Some(w) => Verdict::Vanishes(ZeroWitness::from_box(w)),
        },
        Err(SolveError::NonZeroDimensional) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    Ok(Some(SignCertificate {
        polynomial: g.clone(),
        verdict,
        method: Method::Sos,
        seed,
        center: None,
        auxiliary_system: Some([a, b]),
        sos_parts: Some(parts.to_vec()),
    }))
}

/// Re-derives a certificate from its recorded inputs and compares.
pub fn replay(cert: &SignCertificate) -> Result<bool, CertifyError> {
    let fresh = match cert.method {
        Method::Sos => {
            let parts = cert.sos_parts.as_deref().unwrap_or(&[]);
            match sos_certificate(&cert.polynomial, parts, cert.seed)? {
                Some(c) => c,
                None => return Ok(false),
            }
        }
        Method::DistanceCritical => {
            let Some(center) = &cert.center else {
                return Ok(false);
            };
            match distance_critical_at(&cert.polynomial, center, cert.seed)? {
                Some(c) => c,
                None => return Ok(false),
            }
        }
    };
    Ok(
        fresh.verdict.same_outcome(&cert.verdict)
            && fresh.auxiliary_system == cert.auxiliary_system,
    )
}
