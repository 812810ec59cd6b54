//! Certified real solving of zero-dimensional bivariate systems, and the
//! fiber engine built on it.
//!
//! The solver projects onto one axis with a resultant. Rational roots of the
//! projection are substituted back exactly. At an irrational root `a`, a
//! degree-one member `t1(x) y + t0(x)` of the ideal says any common root
//! over `a` has `y = -t0(a)/t1(a)`. Once `t1(a) != 0` is known and the
//! leading coefficients do not both vanish, that root exists and is real.
//! Roots where either condition can fail trigger a deterministic shear
//! `x <- x + s y`.

pub mod elim;
pub mod newton;

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::maps::{MapError, PolyMap};
use crate::poly::Var;
use crate::realroots::{isolate_int, squarefree_int, IsolatingInterval, SturmChain};
use crate::{IntUPoly, Poly, RatBox, RatInterval, Rational};

use elim::{subresultant_prs, YPoly};
pub use newton::{polish, solve_approx, ApproxPoint, NewtonOptions};

/// Refinement rounds allowed while certifying one solution.
pub const MAX_CERT_DEPTH: usize = 128;
/// Largest component degree accepted by exact-mode fibers.
pub const EXACT_DEGREE_LIMIT: u32 = 20;

/// Extra bisections spent trying to certify that a solution is simple.
const MULTIPLICITY_ROUNDS: usize = 48;

const SHEARS: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("both polynomials are constant in {0}")]
    ConstantInVariable(Var),
    #[error("system is not zero-dimensional (common factor)")]
    NonZeroDimensional,
    #[error("certification stalled after {0} refinement rounds")]
    CertificationStalled(usize),
    #[error("no shear in the search range puts the system in generic position")]
    ShearSearchExhausted,
    #[error("expected polynomials in x and y only")]
    NotBivariate,
    #[error("certified box lost the inclusion property (internal error)")]
    InclusionViolated,
    #[error("exact fibers need a planar map with component degree <= {EXACT_DEGREE_LIMIT}; '{0}' is not eligible")]
    Ineligible(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// `Res_v(f, g)`: the Sylvester determinant with rows of `f` first,
/// returned as a polynomial in the remaining variable.
pub fn resultant(f: &Poly, g: &Poly, v: Var) -> Result<Poly, SolveError> {
    if f.used_vars() > 2 || g.used_vars() > 2 || v == Var::Z {
        return Err(SolveError::NotBivariate);
    }
    if f.degree_in(v) == 0 && g.degree_in(v) == 0 {
        return Err(SolveError::ConstantInVariable(v));
    }
    let (fs, gs) = if v == Var::X {
        (f.swap_vars(Var::X, Var::Y), g.swap_vars(Var::X, Var::Y))
    } else {
        (f.clone(), g.clone())
    };
    let (fy, cf) = YPoly::from_poly(&fs);
    let (gy, cg) = YPoly::from_poly(&gs);
    let prs = subresultant_prs(&fy, &gy);
    // Res(cf f, cg g) = cf^deg(g) cg^deg(f) Res(f, g)
    let scale = num_traits::pow(cf, gy.deg()) * num_traits::pow(cg, fy.deg());
    let res = prs
        .resultant
        .to_rational()
        .scale(&Rational::new(One::one(), scale));
    let other = if v == Var::X { Var::Y } else { Var::X };
    Ok(Poly::from_univariate(&res, other).with_nvars(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// The system Jacobian is certified non-zero on the box.
    Simple,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frame {
    swap: bool,
    shear: i64,
}

impl Frame {
    fn to_original(&self, ix: &RatInterval, iy: &RatInterval) -> (RatInterval, RatInterval) {
        let xq = if self.shear == 0 {
            ix.clone()
        } else {
            ix.add(&iy.scale(&Rational::from_integer(self.shear.into())))
        };
        if self.swap {
            (iy.clone(), xq)
        } else {
            (xq, iy.clone())
        }
    }
}

#[derive(Clone, Debug)]
enum Lift {
    /// Exact rational `x`; `y_root` isolates the `y` coordinate.
    Fixed {
        x: Rational,
        y_root: IsolatingInterval,
    },
    /// `y = -t0(x) / t1(x)` over the isolated `x`-root.
    Linear {
        x_root: IsolatingInterval,
        t1: Arc<IntUPoly>,
        t0: Arc<IntUPoly>,
    },
}

impl Lift {
    /// Box in the projected frame, or `None` if `t1` is not yet bounded
    /// away from zero.
    fn projected(&self) -> Option<(RatInterval, RatInterval)> {
        match self {
            Lift::Fixed { x, y_root } => {
                Some((Interval::point(x.clone()), y_root.interval().clone()))
            }
            Lift::Linear { x_root, t1, t0 } => {
                let ix = x_root.interval();
                if let Some(a) = x_root.exact() {
                    let d = t1.to_rational().eval(a);
                    if d.is_zero() {
                        return None;
                    }
                    let y = -t0.to_rational().eval(a) / d;
                    return Some((ix.clone(), Interval::point(y)));
                }
                let d = t1.to_rational().eval_interval(ix);
                let n = t0.to_rational().eval_interval(ix).neg();
                let y = n.div(&d)?;
                Some((ix.clone(), outward_dyadic(&y, precision_for(ix))))
            }
        }
    }

    fn bisect(&self) -> Lift {
        match self {
            Lift::Fixed { x, y_root } => Lift::Fixed {
                x: x.clone(),
                y_root: y_root.bisect_once(),
            },
            Lift::Linear { x_root, t1, t0 } => Lift::Linear {
                x_root: x_root.bisect_once(),
                t1: t1.clone(),
                t0: t0.clone(),
            },
        }
    }
}

/// Binary digits to keep for a `y`-enclosure over `ix`.
fn precision_for(ix: &RatInterval) -> u64 {
    let w = ix.width();
    let bits = if w.is_zero() {
        64
    } else {
        (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as u64
    };
    bits + 16
}

/// Smallest enclosing interval with endpoints in `2^-bits Z`.
fn outward_dyadic(iv: &RatInterval, bits: u64) -> RatInterval {
    let scale = num_bigint::BigInt::one() << bits;
    let r = |v: &Rational, up: bool| {
        let t = v * Rational::from_integer(scale.clone());
        let n = if up { t.ceil() } else { t.floor() };
        n / Rational::from_integer(scale.clone())
    };
    Interval::spanning(r(iv.lo(), false), r(iv.hi(), true))
}

/// A box certified to hold exactly one real solution of `system`.
#[derive(Clone, Debug)]
pub struct SolutionBox {
    bx: RatBox,
    system: Arc<System>,
    multiplicity: Multiplicity,
    lift: Lift,
    frame: Frame,
}

impl SolutionBox {
    pub fn bounds(&self) -> &RatBox {
        &self.bx
    }

    pub fn x(&self) -> &RatInterval {
        self.bx.side(0)
    }

    pub fn y(&self) -> &RatInterval {
        self.bx.side(1)
    }

    pub fn system(&self) -> &[Poly; 2] {
        &self.system.polys
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.multiplicity
    }

    /// The solution itself when both coordinates are known exactly.
    pub fn exact_point(&self) -> Option<[Rational; 2]> {
        self.bx
            .is_point()
            .then(|| [self.x().lo().clone(), self.y().lo().clone()])
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.bx.contains(p)
    }

    pub fn disjoint_from(&self, other: &SolutionBox) -> bool {
        !self.bx.intersects(&other.bx)
    }

    pub fn width(&self) -> Rational {
        self.bx.max_width()
    }

    /// Interval midpoint of the box.
    pub fn midpoint(&self) -> [Rational; 2] {
        [self.x().midpoint(), self.y().midpoint()]
    }

    /// Shrinks the box to width at most `width`, keeping its solution.
    pub fn refine(&self, width: &Rational) -> Result<SolutionBox, SolveError> {
        let mut cur = self.clone();
        let mut rounds = 0usize;
        while &cur.width() > width {
            cur = cur.step()?;
            rounds += 1;
            if rounds > 64 * MAX_CERT_DEPTH {
                return Err(SolveError::CertificationStalled(rounds));
            }
        }
        Ok(cur)
    }

    fn step(&self) -> Result<SolutionBox, SolveError> {
        let mut lift = self.lift.bisect();
        let mut guard = 0;
        while lift.projected().is_none() {
            guard += 1;
            if guard > MAX_CERT_DEPTH {
                return Err(SolveError::CertificationStalled(guard));
            }
            lift = lift.bisect();
        }
        build_box(lift, self.frame, self.system.clone())
    }
}

#[derive(Debug)]
struct System {
    polys: [Poly; 2],
    jacobian: Poly,
}

impl System {
    fn new(f: &Poly, g: &Poly) -> Self {
        let (f, g) = (f.clone().with_nvars(2), g.clone().with_nvars(2));
        let jacobian = (&(&f.partial(Var::X) * &g.partial(Var::Y))
            - &(&f.partial(Var::Y) * &g.partial(Var::X)))
            .with_nvars(2);
        System {
            polys: [f, g],
            jacobian,
        }
    }
}

fn build_box(lift: Lift, frame: Frame, system: Arc<System>) -> Result<SolutionBox, SolveError> {
    let (ix, iy) = lift
        .projected()
        .ok_or(SolveError::CertificationStalled(0))?;
    let (ox, oy) = frame.to_original(&ix, &iy);
    let bx = RatBox::new(vec![ox, oy]);
    for f in system.polys.iter() {
        let v = f.eval_interval(&bx).expect("bivariate");
        if !v.contains_zero() {
            return Err(SolveError::InclusionViolated);
        }
    }
    let multiplicity = jacobian_sign(&system, &bx);
    Ok(SolutionBox {
        bx,
        system,
        multiplicity,
        lift,
        frame,
    })
}

fn jacobian_sign(system: &System, bx: &RatBox) -> Multiplicity {
    let enclosure = system.jacobian.eval_interval(bx).expect("bivariate");
    if enclosure.contains_zero() {
        Multiplicity::Unknown
    } else {
        Multiplicity::Simple
    }
}

/// All real solutions of `{f = 0, g = 0}`, certified, ordered by `x` then
/// `y`.
pub fn solve_bivariate(f: &Poly, g: &Poly) -> Result<Vec<SolutionBox>, SolveError> {
    if f.used_vars() > 2 || g.used_vars() > 2 {
        return Err(SolveError::NotBivariate);
    }
    if f.is_zero() || g.is_zero() {
        return Err(SolveError::NonZeroDimensional);
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Vec::new());
    }
    let system = Arc::new(System::new(f, g));
    let dy = f.degree_in(Var::Y).max(g.degree_in(Var::Y));
    let dx = f.degree_in(Var::X).max(g.degree_in(Var::X));
    let swap = dy == 0 || (dx > 0 && dx < dy);
    let (fp, gp) = if swap {
        (f.swap_vars(Var::X, Var::Y), g.swap_vars(Var::X, Var::Y))
    } else {
        (f.clone(), g.clone())
    };
    for shear in SHEARS {
        let frame = Frame { swap, shear };
        let (fs, gs) = if shear == 0 {
            (fp.clone(), gp.clone())
        } else {
            (apply_shear(&fp, shear), apply_shear(&gp, shear))
        };
        match solve_projected(&fs, &gs) {
            Ok(lifts) => return finish(lifts, frame, system),
            Err(Attempt::NeedShear) => continue,
            Err(Attempt::Fail(e)) => return Err(e),
        }
    }
    Err(SolveError::ShearSearchExhausted)
}

fn apply_shear(f: &Poly, s: i64) -> Poly {
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    let sx = &x + &y.scale(&Rational::from_integer(s.into()));
    f.clone()
        .with_nvars(2)
        .compose(&[sx, y])
        .expect("two substitutions for a bivariate polynomial")
}

enum Attempt {
    NeedShear,
    Fail(SolveError),
}

impl From<SolveError> for Attempt {
    fn from(e: SolveError) -> Self {
        Attempt::Fail(e)
    }
}

fn solve_projected(f: &Poly, g: &Poly) -> Result<Vec<Lift>, Attempt> {
    let (fy, _) = YPoly::from_poly(f);
    let (gy, _) = YPoly::from_poly(g);
    if fy.deg() == 0 && gy.deg() == 0 {
        return Err(SolveError::ConstantInVariable(Var::Y).into());
    }
    if fy.content().gcd(&gy.content()).deg() > 0 {
        return Err(SolveError::NonZeroDimensional.into());
    }
    let prs = subresultant_prs(&fy, &gy);
    if prs.resultant.is_zero() {
        return Err(SolveError::NonZeroDimensional.into());
    }
    let rstar = Arc::new(squarefree_int(&prs.resultant));
    let roots = isolate_int(&rstar);
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let bad_linear = match &prs.linear {
        Some((t1, _)) => rstar.gcd(t1),
        None => (*rstar).clone(),
    };
    let bad_lc = rstar.gcd(&fy.lc().gcd(&gy.lc()));
    let bad = lcm(&bad_linear, &bad_lc);
    let bad_chain = (bad.deg() > 0).then(|| SturmChain::new(&bad));
    let linear = prs.linear.map(|(t1, t0)| (Arc::new(t1), Arc::new(t0)));

    let mut lifts = Vec::new();
    for iv in roots {
        if let Some(a) = iv.exact() {
            lifts.extend(fixed_x(&fy, &gy, a)?);
            continue;
        }
        let is_bad = bad_chain
            .as_ref()
            .is_some_and(|c| c.count_open(iv.lo(), iv.hi()) > 0);
        let exact = if is_bad {
            iv.rational_value()
        } else {
            probe_rational(&iv)
        };
        if let Some(a) = exact {
            lifts.extend(fixed_x(&fy, &gy, &a)?);
            continue;
        }
        if is_bad {
            return Err(Attempt::NeedShear);
        }
        let (t1, t0) = linear
            .clone()
            .expect("roots are bad when no linear member exists");
        let mut lift = Lift::Linear { x_root: iv, t1, t0 };
        let mut rounds = 0;
        while lift.projected().is_none() {
            rounds += 1;
            if rounds > MAX_CERT_DEPTH {
                return Err(SolveError::CertificationStalled(rounds).into());
            }
            lift = lift.bisect();
        }
        lifts.push(lift);
    }
    Ok(lifts)
}

fn lcm(a: &IntUPoly, b: &IntUPoly) -> IntUPoly {
    if a.deg() == 0 {
        return b.primitive_part();
    }
    if b.deg() == 0 {
        return a.primitive_part();
    }
    let g = a.gcd(b);
    (a * b)
        .div_exact(&g)
        .expect("gcd divides product")
        .primitive_part()
}

/// Cheap check for a rational root with a small denominator.
fn probe_rational(iv: &IsolatingInterval) -> Option<Rational> {
    iv.probe(&Rational::new(One::one(), num_bigint::BigInt::one() << 48))
}

fn fixed_x(fy: &YPoly, gy: &YPoly, a: &Rational) -> Result<Vec<Lift>, SolveError> {
    let fa = fy.at_x(a);
    let ga = gy.at_x(a);
    let h = match (fa.is_zero(), ga.is_zero()) {
        (true, true) => return Err(SolveError::NonZeroDimensional),
        (true, false) => ga.primitive_part(),
        (false, true) => fa.primitive_part(),
        (false, false) => fa.gcd(&ga),
    };
    if h.deg() == 0 {
        return Ok(Vec::new());
    }
    let h = Arc::new(h);
    Ok(isolate_int(&h)
        .into_iter()
        .map(|iv| {
            let y_root = match probe_rational(&iv) {
                Some(c) => IsolatingInterval::from_parts(Interval::point(c), h.clone()),
                None => iv,
            };
            Lift::Fixed {
                x: a.clone(),
                y_root,
            }
        })
        .collect())
}

fn finish(
    lifts: Vec<Lift>,
    frame: Frame,
    system: Arc<System>,
) -> Result<Vec<SolutionBox>, SolveError> {
    let mut boxes = lifts
        .into_iter()
        .map(|l| build_box(l, frame, system.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    if frame.shear != 0 {
        // Projected boxes are disjoint; after un-shearing, refine until the
        // originals are too, which again gives one solution per box.
        let mut rounds = 0;
        loop {
            let clash: Vec<usize> = (0..boxes.len())
                .filter(|&i| (0..boxes.len()).any(|j| j != i && !boxes[i].disjoint_from(&boxes[j])))
                .collect();
            if clash.is_empty() {
                break;
            }
            rounds += 1;
            if rounds > MAX_CERT_DEPTH {
                return Err(SolveError::CertificationStalled(rounds));
            }
            for i in clash {
                boxes[i] = boxes[i].step()?;
            }
        }
    }
    for b in boxes.iter_mut() {
        let mut rounds = 0;
        while b.multiplicity == Multiplicity::Unknown
            && !b.bx.is_point()
            && rounds < MULTIPLICITY_ROUNDS
        {
            *b = b.step()?;
            rounds += 1;
        }
    }
    boxes.sort_by(|a, b| {
        a.x()
            .lo()
            .cmp(b.x().lo())
            .then_with(|| a.y().lo().cmp(b.y().lo()))
    });
    Ok(boxes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberMode {
    Exact,
    Approximate,
}

impl FiberMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FiberMode::Exact => "exact",
            FiberMode::Approximate => "approximate",
        }
    }
}

/// Preimages of one target point.
///
/// Exact results list every real preimage as a certified box. Approximate
/// results hold deduplicated Newton limits, so `count` is only a lower
/// bound.
#[derive(Clone, Debug)]
pub struct FiberResult {
    pub map_name: String,
    pub target: [Rational; 2],
    pub mode: FiberMode,
    pub solutions: Vec<SolutionBox>,
    pub approximations: Vec<ApproxPoint>,
}

impl FiberResult {
    pub fn count(&self) -> usize {
        match self.mode {
            FiberMode::Exact => self.solutions.len(),
            FiberMode::Approximate => self.approximations.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }
}

/// Whether exact fibers are supported for `m`.
pub fn exact_eligible(m: &PolyMap) -> bool {
    m.is_planar() && m.degree() <= EXACT_DEGREE_LIMIT
}

/// The fiber system `{m1 - a, m2 - b}`.
pub fn fiber_system(m: &PolyMap, target: &[Rational; 2]) -> [Poly; 2] {
    [
        m.component(0) - &Poly::constant(target[0].clone()),
        m.component(1) - &Poly::constant(target[1].clone()),
    ]
}

pub fn fiber(
    m: &PolyMap,
    target: &[Rational; 2],
    mode: FiberMode,
    opts: &NewtonOptions,
) -> Result<FiberResult, SolveError> {
    if !m.is_planar() {
        return Err(SolveError::Ineligible(m.name().to_string()));
    }
    let mut out = FiberResult {
        map_name: m.name().to_string(),
        target: target.clone(),
        mode,
        solutions: Vec::new(),
        approximations: Vec::new(),
    };
    match mode {
        FiberMode::Exact => {
            if !exact_eligible(m) {
                return Err(SolveError::Ineligible(m.name().to_string()));
            }
            let [f, g] = fiber_system(m, target);
            out.solutions = solve_bivariate(&f, &g)?;
        }
        FiberMode::Approximate => {
            let sys = float_system(m);
            let t = [
                crate::scalar::rational_to_f64(&target[0]),
                crate::scalar::rational_to_f64(&target[1]),
            ];
            out.approximations = solve_approx(&sys, t, opts);
        }
    }
    Ok(out)
}

pub fn float_system(m: &PolyMap) -> [crate::FloatPoly; 2] {
    let conv = |p: &Poly| p.map_coeffs(crate::scalar::rational_to_f64);
    [conv(m.component(0)), conv(m.component(1))]
}

/// Approximate fiber of `outer ∘ inner`: solve `outer = target`, then
/// `inner = w` for every stage-one solution `w`.
#[derive(Clone, Debug)]
pub struct StagedFiber {
    pub stage_one: Vec<ApproxPoint>,
    pub result: FiberResult,
}

pub fn staged_fiber(
    outer: &PolyMap,
    inner: &PolyMap,
    target: &[Rational; 2],
    opts: &NewtonOptions,
) -> Result<StagedFiber, SolveError> {
    if !outer.is_planar() || !inner.is_planar() {
        return Err(SolveError::Ineligible(format!(
            "{}∘{}",
            outer.name(),
            inner.name()
        )));
    }
    let first = fiber(outer, target, FiberMode::Approximate, opts)?.approximations;
    let inner_sys = float_system(inner);
    let mut all = Vec::new();
    for w in &first {
        all.extend(solve_approx(&inner_sys, w.point, opts));
    }
    let all = newton::dedup(all, opts.dedup_tol);
    Ok(StagedFiber {
        stage_one: first,
        result: FiberResult {
            map_name: format!("{}∘{}", outer.name(), inner.name()),
            target: target.clone(),
            mode: FiberMode::Approximate,
            solutions: Vec::new(),
            approximations: all,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::builtin;
    use crate::parser::parse_poly;
    use crate::{rat, ratio};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn solve(f: &str, g: &str) -> Vec<SolutionBox> {
        solve_bivariate(&p(f), &p(g)).unwrap()
    }

    #[test]
    fn circle_line() {
        let s = solve("x^2 + y^2 - 2", "x - y");
        assert_eq!(s.len(), 2);
        assert!(s[0].contains(&[rat(-1), rat(-1)]));
        assert!(s[1].contains(&[rat(1), rat(1)]));
        assert!(s.iter().all(|b| b.multiplicity() == Multiplicity::Simple));
    }

    #[test]
    fn linear_system_is_exact() {
        let s = solve("x - 1", "y - 2");
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].exact_point(), Some([rat(1), rat(2)]));
    }

    #[test]
    fn irrational_roots() {
        let s = solve("x^2 + y^2 - 1", "y - x");
        assert_eq!(s.len(), 2);
        let r = s[1].refine(&ratio(1, 1_000_000)).unwrap();
        let x = crate::scalar::rational_to_f64(&r.x().midpoint());
        assert!((x - 0.5f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn needs_shear() {
        // two solutions share the same x
        let s = solve("x^2 + y^2 - 1", "x");
        assert_eq!(s.len(), 2);
        let s = solve("x^2 - 2 + y - y", "y^2 - 3 + x - x");
        assert_eq!(s.len(), 4);
        for b in &s {
            for c in &s {
                if !std::ptr::eq(b, c) {
                    assert!(b.disjoint_from(c));
                }
            }
        }
    }

    #[test]
    fn empty_and_degenerate() {
        assert!(solve("x^2 + y^2 + 1", "x - y").is_empty());
        assert!(solve("x^2 + 1", "y").is_empty());
        assert_eq!(
            solve_bivariate(&p("x*y"), &p("x*y^2 + x")).unwrap_err(),
            SolveError::NonZeroDimensional
        );
    }

    #[test]
    fn double_root_is_flagged() {
        let s = solve("y - x^2", "y");
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].exact_point(), Some([rat(0), rat(0)]));
        assert_eq!(s[0].multiplicity(), Multiplicity::Unknown);
    }

    #[test]
    fn resultant_example() {
        let r = resultant(&p("x*y - 1"), &p("y^2 - x"), Var::Y).unwrap();
        assert_eq!(r, p("1 - x^3"));
        let r = resultant(&p("y*x - 1"), &p("x^2 - y"), Var::X).unwrap();
        assert_eq!(r, p("1 - y^3"));
    }

    #[test]
    fn phi_fiber() {
        let phi = builtin("phi").unwrap();
        let opts = NewtonOptions::default();
        let r = fiber(&phi, &[rat(2), rat(0)], FiberMode::Exact, &opts).unwrap();
        assert_eq!(r.count(), 2);
        assert!(r.solutions[0].contains(&[rat(-1), rat(0)]));
        assert!(r.solutions[1].contains(&[rat(2), rat(0)]));
    }

    #[test]
    fn bf_fibers_over_special_points() {
        let bf = builtin("F").unwrap();
        let opts = NewtonOptions::default();
        for a in [1, -1] {
            let r = fiber(&bf, &[rat(a), rat(0)], FiberMode::Exact, &opts).unwrap();
            assert!(r.is_empty(), "fiber over ({a},0)");
        }
        let r = fiber(&bf, &[rat(0), rat(0)], FiberMode::Exact, &opts).unwrap();
        assert_eq!(r.count(), 1);
        assert!(r.solutions[0].contains(&[rat(0), rat(0)]));
        let r = fiber(&bf, &[rat(2), rat(0)], FiberMode::Exact, &opts).unwrap();
        assert_eq!(r.count(), 2);
        let r = fiber(&bf, &[rat(5), rat(-35)], FiberMode::Exact, &opts).unwrap();
        assert!(r.solutions.iter().any(|b| b.contains(&[rat(1), rat(0)])));
    }
}
