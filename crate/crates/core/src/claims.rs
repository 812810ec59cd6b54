//! Claim reports assembled from certificates, exact fibers and identities.
//!
//! Each report is a list of named checks. A check carries the evidence it
//! was decided on, so every verdict can be replayed.

use std::cell::OnceCell;
use std::fmt;

use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::certify::{nonvanishing_sign, verify_sos, CertifyError, Sign, SignCertificate, Verdict};
use crate::maps::{
    builtin, compose_maps, psi_sos_parts, psi_sos_parts_verified, MapError, PolyMap,
};
use crate::parser::{parse_point, parse_poly, print_canonical, rational_text, ParseError};
use crate::poly::Var;
use crate::ratfunc::{
    build_g, rf_jacobian_det, ChainRuleEvidence, NonvanishingEvidence, RatFuncError,
};
use crate::realroots::isolate_roots;
use crate::scalar::{f64_to_rational, rational_to_f64};
use crate::systems::{
    exact_eligible, fiber, float_system, polish, solve_bivariate, staged_fiber, FiberMode,
    FiberResult, NewtonOptions, SolutionBox, SolveError,
};
use crate::{rat, ratio, Poly, RatUPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("no witness of non-injectivity for '{map}' on grid {grid}")]
    WitnessNotFound { map: String, grid: String },
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Theorem1,
    Prop2,
    Prop3,
    Example4,
}

impl ClaimId {
    pub const ALL: [ClaimId; 4] = [
        ClaimId::Theorem1,
        ClaimId::Prop2,
        ClaimId::Prop3,
        ClaimId::Example4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Theorem1 => "theorem1",
            ClaimId::Prop2 => "prop2",
            ClaimId::Prop3 => "prop3",
            ClaimId::Example4 => "example4",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimId> {
        ClaimId::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckVerdict {
    Pass,
    Fail,
    Skipped,
}

impl CheckVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckVerdict::Pass => "PASS",
            CheckVerdict::Fail => "FAIL",
            CheckVerdict::Skipped => "SKIPPED",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sampled preimage of the lift.
#[derive(Clone, Debug)]
pub struct LiftSample {
    pub target: [Rational; 3],
    /// Approximate preimage, exact once converted.
    pub preimage: Option<[Rational; 3]>,
    pub residual: Option<Rational>,
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Certificate(SignCertificate),
    Fiber(FiberResult),
    Fibers(Vec<FiberResult>),
    Witness(Witness),
    Roots {
        polynomial: RatUPoly,
        rational: Vec<Rational>,
        irrational: usize,
    },
    Solutions {
        system: [Poly; 2],
        solutions: Vec<SolutionBox>,
    },
    /// An exact identity, stated canonically and fingerprinted.
    Identity {
        statement: String,
        hash: String,
    },
    Samples(Vec<LiftSample>),
    Error(String),
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Certificate(_) => "sign_certificate",
            Evidence::Fiber(_) => "fiber",
            Evidence::Fibers(_) => "fibers",
            Evidence::Witness(_) => "witness",
            Evidence::Roots { .. } => "roots",
            Evidence::Solutions { .. } => "solutions",
            Evidence::Identity { .. } => "identity",
            Evidence::Samples(_) => "samples",
            Evidence::Error(_) => "error",
        }
    }

    fn identity(statement: String) -> Self {
        let hash = identity_hash(&statement);
        Evidence::Identity { statement, hash }
    }
}

/// Hex SHA-256 of a canonical statement.
pub fn identity_hash(statement: &str) -> String {
    Sha256::digest(statement.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub verdict: CheckVerdict,
    pub required: bool,
    pub detail: String,
    pub evidence: Evidence,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>, evidence: Evidence) -> Self {
        Check {
            name: name.to_string(),
            verdict: CheckVerdict::from_bool(ok),
            required: true,
            detail: detail.into(),
            evidence,
        }
    }

    fn failed(name: &str, err: impl fmt::Display) -> Self {
        let msg = err.to_string();
        Check::new(name, false, msg.clone(), Evidence::Error(msg))
    }

    fn skipped(name: &str, why: &str) -> Self {
        Check {
            name: name.to_string(),
            verdict: CheckVerdict::Skipped,
            required: true,
            detail: why.to_string(),
            evidence: Evidence::Error(why.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub checks: Vec<Check>,
}

impl ClaimReport {
    pub fn overall(&self) -> CheckVerdict {
        let bad = self.checks.iter().any(|c| {
            c.verdict == CheckVerdict::Fail || (c.required && c.verdict == CheckVerdict::Skipped)
        });
        CheckVerdict::from_bool(!bad)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Rectangular rational grid `[x0, x1] x [y0, y1]` with a common step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
    pub step: Rational,
}

impl GridSpec {
    pub fn new(
        x0: Rational,
        x1: Rational,
        y0: Rational,
        y1: Rational,
        step: Rational,
    ) -> Result<Self, ClaimError> {
        if !step.is_positive() {
            return Err(ClaimError::BadGrid("step must be positive".into()));
        }
        if x1 < x0 || y1 < y0 {
            return Err(ClaimError::BadGrid("empty range".into()));
        }
        Ok(GridSpec {
            x0,
            x1,
            y0,
            y1,
            step,
        })
    }

    /// `"x0,x1,y0,y1,step"`.
    pub fn parse(text: &str) -> Result<Self, ClaimError> {
        let v = parse_point(text)?;
        let [x0, x1, y0, y1, step]: [Rational; 5] = v
            .try_into()
            .map_err(|_| ClaimError::BadGrid("expected x0,x1,y0,y1,step".into()))?;
        Self::new(x0, x1, y0, y1, step)
    }

    fn axis(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = lo.clone();
        while &v <= hi {
            out.push(v.clone());
            v += step;
        }
        out
    }

    /// Row-major: `x` outer, `y` inner, starting at `(x0, y0)`.
    pub fn points(&self) -> Vec<[Rational; 2]> {
        let ys = Self::axis(&self.y0, &self.y1, &self.step);
        Self::axis(&self.x0, &self.x1, &self.step)
            .into_iter()
            .flat_map(|x| ys.iter().map(move |y| [x.clone(), y.clone()]))
            .collect()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x0: rat(-3),
            x1: rat(3),
            y0: rat(-3),
            y1: rat(3),
            step: ratio(1, 2),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [&self.x0, &self.x1, &self.y0, &self.y1, &self.step].map(rational_text);
        f.write_str(&parts.join(","))
    }
}

/// Two distinct certified preimages of one target.
#[derive(Clone, Debug)]
pub struct Witness {
    pub map_name: String,
    pub target: [Rational; 2],
    /// The grid point the search started from, when it is one of the two.
    pub domain_point: Option<[Rational; 2]>,
    pub points: [SolutionBox; 2],
}

impl Witness {
    /// Disjoint boxes certified against the same fiber system.
    pub fn is_valid(&self) -> bool {
        let [a, b] = &self.points;
        a.disjoint_from(b) && a.system() == b.system()
    }

    pub fn refine(&self, width: &Rational) -> Result<Witness, SolveError> {
        let [a, b] = &self.points;
        Ok(Witness {
            points: [a.refine(width)?, b.refine(width)?],
            ..self.clone()
        })
    }
}

/// First grid point whose exact fiber holds at least two real solutions.
pub fn find_witness(m: &PolyMap, grid: &GridSpec) -> Result<Witness, ClaimError> {
    if !exact_eligible(m) {
        return Err(SolveError::Ineligible(m.name().to_string()).into());
    }
    let opts = NewtonOptions::default();
    for p in grid.points() {
        let t = m.eval(&p)?;
        let target = [t[0].clone(), t[1].clone()];
        let r = fiber(m, &target, FiberMode::Exact, &opts)?;
        if r.solutions.len() < 2 {
            continue;
        }
        let Some(own) = r.solutions.iter().position(|s| s.contains(&p)) else {
            continue;
        };
        let other = (0..r.solutions.len())
            .find(|&i| i != own)
            .expect("two solutions");
        let exact = r.solutions[own].exact_point().is_some();
        return Ok(Witness {
            map_name: m.name().to_string(),
            target,
            domain_point: exact.then(|| p.clone()),
            points: [r.solutions[own].clone(), r.solutions[other].clone()],
        });
    }
    Err(ClaimError::WitnessNotFound {
        map: m.name().to_string(),
        grid: grid.to_string(),
    })
}

fn is_identity(m: &PolyMap) -> bool {
    m.components().len() == 2
        && m.component(0) == &Poly::var(Var::X)
        && m.component(1) == &Poly::var(Var::Y)
}

/// The same boxes witness `outer ∘ m`, with target `outer(t)`.
pub fn transfer_witness(w: &Witness, outer: &PolyMap) -> Result<Witness, MapError> {
    if is_identity(outer) {
        return Ok(w.clone());
    }
    let t = outer.eval(&w.target)?;
    Ok(Witness {
        map_name: format!("{}∘{}", outer.name(), w.map_name),
        target: [t[0].clone(), t[1].clone()],
        ..w.clone()
    })
}

#[derive(Clone, Debug)]
pub struct ClaimConfig {
    pub seed: u64,
    /// Map checked by the first theorem; the other claims build on it.
    pub base: PolyMap,
    pub witness_grid: GridSpec,
    /// Targets whose exact fibers must be nonempty.
    pub spot_grid: Vec<[Rational; 2]>,
    /// Targets `(u, v, w)` for the lift surjectivity sample.
    pub lift_grid: Vec<[Rational; 3]>,
    pub newton: NewtonOptions,
}

impl ClaimConfig {
    pub fn with_seed(seed: u64) -> Self {
        ClaimConfig {
            seed,
            ..Self::default()
        }
    }

    /// `{-2,-1,0,1,2} x {-2,-1,1/2,1,2}`: 25 nodes, none on the axis
    /// `y = 0`, so `(+-1, 0)` are avoided.
    pub fn default_spot_grid() -> Vec<[Rational; 2]> {
        let ys = [rat(-2), rat(-1), ratio(1, 2), rat(1), rat(2)];
        (-2..=2)
            .flat_map(|x| ys.iter().map(move |y| [rat(x), y.clone()]))
            .collect()
    }

    pub fn default_lift_grid() -> Vec<[Rational; 3]> {
        let vals = [rat(-1), rat(0), rat(1)];
        let mut out = Vec::new();
        for u in &vals {
            for v in &vals {
                for w in &vals {
                    out.push([u.clone(), v.clone(), w.clone()]);
                }
            }
        }
        out
    }
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig {
            seed: 0,
            base: builtin("F").expect("builtin map"),
            witness_grid: GridSpec::default(),
            spot_grid: Self::default_spot_grid(),
            lift_grid: Self::default_lift_grid(),
            newton: NewtonOptions::default(),
        }
    }
}

type Shared<T> = Result<T, String>;

struct BaseEvidence {
    det: Shared<SignCertificate>,
    omitted: [Shared<FiberResult>; 2],
    witness: Shared<Witness>,
}

struct SurjectiveEvidence {
    f: Shared<PolyMap>,
    chain: Shared<NonvanishingEvidence>,
    witness: Shared<Witness>,
}

/// Runs claims against one configuration, sharing intermediate evidence.
pub struct ClaimContext {
    config: ClaimConfig,
    base: OnceCell<BaseEvidence>,
    surjective: OnceCell<SurjectiveEvidence>,
}

fn omitted_targets() -> [[Rational; 2]; 2] {
    [[rat(1), rat(0)], [rat(-1), rat(0)]]
}

fn point_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(rational_text).collect();
    format!("({})", parts.join(", "))
}

fn upoly(text: &str) -> RatUPoly {
    parse_poly(text)
        .expect("literal")
        .to_univariate(Var::X)
        .expect("univariate literal")
}

/// Exact real roots of `p`: the rational ones and a count of the rest.
fn real_roots(p: &RatUPoly) -> (Vec<Rational>, usize) {
    let roots = isolate_roots(p).expect("non-zero literal");
    let mut rational = Vec::new();
    let mut irrational = 0;
    for r in &roots {
        match r.rational_value() {
            Some(v) => rational.push(v),
            None => irrational += 1,
        }
    }
    (rational, irrational)
}

fn roots_check(name: &str, p: RatUPoly, expect: &[Rational]) -> Check {
    let (rational, irrational) = real_roots(&p);
    let mut want = expect.to_vec();
    want.sort();
    let ok = irrational == 0 && rational == want;
    let shown: Vec<String> = rational.iter().map(rational_text).collect();
    let detail = format!(
        "real roots of {} = {{{}}}",
        print_canonical(&Poly::from_univariate(&p, Var::X)),
        shown.join(", ")
    );
    Check::new(
        name,
        ok,
        detail,
        Evidence::Roots {
            polynomial: p,
            rational,
            irrational,
        },
    )
}

fn fiber_check(name: &str, r: &Shared<FiberResult>, want_empty: bool) -> Check {
    match r {
        Ok(f) => {
            let ok = f.mode == FiberMode::Exact && f.is_empty() == want_empty;
            let detail = format!(
                "exact fiber of {} over {}: {} solution(s)",
                f.map_name,
                point_text(&f.target),
                f.count()
            );
            Check::new(name, ok, detail, Evidence::Fiber(f.clone()))
        }
        Err(e) => Check::failed(name, e),
    }
}

fn exact_solutions(
    system: [Poly; 2],
) -> Result<(Vec<SolutionBox>, Vec<[Rational; 2]>), SolveError> {
    let sols = solve_bivariate(&system[0], &system[1])?;
    let points = sols.iter().filter_map(SolutionBox::exact_point).collect();
    Ok((sols, points))
}

impl ClaimContext {
    pub fn new(config: ClaimConfig) -> Self {
        ClaimContext {
            config,
            base: OnceCell::new(),
            surjective: OnceCell::new(),
        }
    }

    pub fn config(&self) -> &ClaimConfig {
        &self.config
    }

    pub fn verify(&self, id: ClaimId) -> ClaimReport {
        match id {
            ClaimId::Theorem1 => self.verify_theorem1(),
            ClaimId::Prop2 => self.verify_prop2(),
            ClaimId::Prop3 => self.verify_prop3(),
            ClaimId::Example4 => self.verify_example4(),
        }
    }

    fn exact_fiber(&self, m: &PolyMap, t: &[Rational; 2]) -> Shared<FiberResult> {
        fiber(m, t, FiberMode::Exact, &self.config.newton).map_err(|e| e.to_string())
    }

    fn base_evidence(&self) -> &BaseEvidence {
        self.base.get_or_init(|| {
            let m = &self.config.base;
            let det = m.jacobian_det().map_err(|e| e.to_string()).and_then(|j| {
                nonvanishing_sign(&j, None, self.config.seed).map_err(|e| e.to_string())
            });
            let [t1, t2] = omitted_targets();
            BaseEvidence {
                det,
                omitted: [self.exact_fiber(m, &t1), self.exact_fiber(m, &t2)],
                witness: find_witness(m, &self.config.witness_grid).map_err(|e| e.to_string()),
            }
        })
    }

    pub fn verify_theorem1(&self) -> ClaimReport {
        let m = &self.config.base;
        let ev = self.base_evidence();
        let mut checks = Vec::new();

        checks.push(match &ev.det {
            Ok(c) => {
                let at_origin = c.polynomial.eval(&[rat(0), rat(0)]).expect("bivariate");
                let ok = c.verdict.is_never_vanishes(Sign::Positive) && at_origin.is_positive();
                let what = match &c.verdict {
                    Verdict::NeverVanishes(s) => format!("never vanishes, sign {}", s.symbol()),
                    Verdict::Vanishes(_) => "vanishes".to_string(),
                };
                let detail = format!(
                    "det(D {}) {} ({}); value at (0, 0) = {}",
                    m.name(),
                    what,
                    c.method.as_str(),
                    rational_text(&at_origin)
                );
                Check::new(
                    "jacobian_nonvanishing",
                    ok,
                    detail,
                    Evidence::Certificate(c.clone()),
                )
            }
            Err(e) => Check::failed("jacobian_nonvanishing", e),
        });
        checks.push(fiber_check("fiber_empty_over_(1,0)", &ev.omitted[0], true));
        checks.push(fiber_check("fiber_empty_over_(-1,0)", &ev.omitted[1], true));
        checks.push(match &ev.witness {
            Ok(w) => {
                let ok = w.is_valid();
                let detail = format!(
                    "two disjoint certified preimages of {}",
                    point_text(&w.target)
                );
                Check::new(
                    "witness_non_injective",
                    ok,
                    detail,
                    Evidence::Witness(w.clone()),
                )
            }
            Err(e) => Check::failed("witness_non_injective", e),
        });

        let mut fibers = Vec::new();
        let mut failure = None;
        for t in &self.config.spot_grid {
            match fiber(m, t, FiberMode::Exact, &self.config.newton) {
                Ok(r) => fibers.push(r),
                Err(e) => {
                    failure = Some(format!("fiber over {}: {e}", point_text(t)));
                    break;
                }
            }
        }
        checks.push(match failure {
            Some(e) => Check::failed("spot_check_surjectivity", e),
            None => {
                let empty: Vec<String> = fibers
                    .iter()
                    .filter(|f| f.is_empty())
                    .map(|f| point_text(&f.target))
                    .collect();
                let detail = if empty.is_empty() {
                    format!("spot check: all {} exact fibers nonempty", fibers.len())
                } else {
                    format!("spot check: empty fibers over {}", empty.join(", "))
                };
                Check::new(
                    "spot_check_surjectivity",
                    empty.is_empty(),
                    detail,
                    Evidence::Fibers(fibers),
                )
            }
        });
        ClaimReport {
            claim: ClaimId::Theorem1,
            checks,
        }
    }

    fn surjective_evidence(&self) -> &SurjectiveEvidence {
        self.surjective.get_or_init(|| {
            let base = &self.config.base;
            let phi = builtin("phi").expect("builtin map");
            let name = if base.name() == "F" {
                "f".to_string()
            } else {
                format!("phi∘{}", base.name())
            };
            let f = compose_maps(&phi, base)
                .map(|m| m.renamed(name))
                .map_err(|e| e.to_string());
            let ev = self.base_evidence();
            let chain = (|| {
                let inner_certificate = ev.det.clone()?;
                let omitted = ev.omitted.iter().cloned().collect::<Result<Vec<_>, _>>()?;
                let chain = NonvanishingEvidence::ChainRule(ChainRuleEvidence {
                    outer: phi.clone(),
                    inner: base.clone(),
                    inner_certificate,
                    outer_sos_parts: phi_sos_parts(),
                    omitted,
                });
                let f = f.clone()?;
                match chain.check(&f) {
                    Ok(Sign::Positive) => Ok(chain),
                    Ok(Sign::Negative) => Err("det(D f) is negative".to_string()),
                    Err(e) => Err(e.to_string()),
                }
            })();
            let witness = ev
                .witness
                .clone()
                .and_then(|w| transfer_witness(&w, &phi).map_err(|e| e.to_string()))
                .map(|w| Witness {
                    map_name: f
                        .as_ref()
                        .map(|m| m.name().to_string())
                        .unwrap_or(w.map_name.clone()),
                    ..w
                });
            SurjectiveEvidence { f, chain, witness }
        })
    }

    pub fn verify_prop2(&self) -> ClaimReport {
        let base = &self.config.base;
        let mut checks = vec![
            roots_check(
                "phi_critical_points",
                upoly("3*x^2 - 3"),
                &[rat(-1), rat(1)],
            ),
            {
                let a = roots_check(
                    "phi_preimages_of_2",
                    upoly("x^3 - 3*x - 2"),
                    &[rat(-1), rat(2)],
                );
                let b = roots_check(
                    "phi_preimages_of_-2",
                    upoly("x^3 - 3*x + 2"),
                    &[rat(1), rat(-2)],
                );
                let ok = a.verdict == CheckVerdict::Pass && b.verdict == CheckVerdict::Pass;
                let detail = format!(
                    "{}; {}; so phi^-1(+-2) is not inside {{+-1}}",
                    a.detail, b.detail
                );
                let ev = Evidence::identity(detail.clone());
                Check::new("phi_preimages_of_pm2", ok, detail, ev)
            },
        ];
        let two = [[rat(2), rat(0)], [rat(-2), rat(0)]];
        let fibers: Vec<Shared<FiberResult>> =
            two.iter().map(|t| self.exact_fiber(base, t)).collect();
        checks.push(
            match fibers.iter().cloned().collect::<Result<Vec<_>, _>>() {
                Ok(fs) => {
                    let ok = fs.iter().all(|f| !f.is_empty());
                    let counts: Vec<String> = fs
                        .iter()
                        .map(|f| format!("{} over {}", f.count(), point_text(&f.target)))
                        .collect();
                    let detail = format!("exact fibers of {}: {}", base.name(), counts.join(", "));
                    Check::new("fibers_over_pm2_nonempty", ok, detail, Evidence::Fibers(fs))
                }
                Err(e) => Check::failed("fibers_over_pm2_nonempty", e),
            },
        );

        let phi = builtin("phi").expect("builtin map");
        let jphi = phi.jacobian_det().expect("planar");
        let sos = verify_sos(&jphi, &phi_sos_parts());
        let zeros = exact_solutions([
            parse_poly("3*x^2 - 3*y^2 - 3").expect("literal"),
            parse_poly("6*x*y").expect("literal"),
        ]);
        let sev = self.surjective_evidence();
        checks.push(match (&zeros, &sev.chain) {
            (Err(e), _) => Check::failed("chain_rule_nonvanishing", e),
            (Ok((sols, points)), chain) => {
                let want = omitted_targets();
                let exact = points.len() == sols.len();
                let mut got = points.clone();
                got.sort();
                let mut want_sorted = want.to_vec();
                want_sorted.sort();
                let zero_ok = exact && got == want_sorted;
                let shown: Vec<String> = got.iter().map(|p| point_text(p)).collect();
                match chain {
                    Ok(_) => {
                        let detail = format!(
                            "det(D phi) = (3x^2-3y^2-3)^2 + (6xy)^2: {}; zeros {{{}}}; both omitted by {}; det(D {}) > 0",
                            if sos { "verified" } else { "MISMATCH" },
                            shown.join(", "),
                            base.name(),
                            base.name()
                        );
                        let ok = sos && zero_ok;
                        Check::new(
                            "chain_rule_nonvanishing",
                            ok,
                            detail,
                            Evidence::Solutions {
                                system: [
                                    parse_poly("3*x^2 - 3*y^2 - 3").expect("literal"),
                                    parse_poly("6*x*y").expect("literal"),
                                ],
                                solutions: sols.clone(),
                            },
                        )
                    }
                    Err(e) => Check::failed("chain_rule_nonvanishing", e),
                }
            }
        });
        checks.push(self.transfer_check(&sev.witness, sev.f.as_ref().ok()));
        ClaimReport {
            claim: ClaimId::Prop2,
            checks,
        }
    }

    fn transfer_check(&self, w: &Shared<Witness>, composed: Option<&PolyMap>) -> Check {
        let name = "witness_transfer";
        let (w, m) = match (w, composed) {
            (Ok(w), Some(m)) => (w, m),
            (Err(e), _) => return Check::failed(name, e),
            (_, None) => return Check::failed(name, "composed map unavailable"),
        };
        // The exact grid point, if any, must hit the new target exactly.
        let exact_ok = match &w.domain_point {
            Some(p) => m.eval(p).map(|v| v[..] == w.target[..]).unwrap_or(false),
            None => true,
        };
        let ok = w.is_valid() && exact_ok;
        let detail = format!("witness for {} over {}", m.name(), point_text(&w.target));
        Check::new(name, ok, detail, Evidence::Witness(w.clone()))
    }

    pub fn verify_prop3(&self) -> ClaimReport {
        let psi = builtin("psi").expect("builtin map");
        let j = psi.jacobian_det().expect("planar");
        let mut checks = Vec::new();

        let printed = psi_sos_parts();
        let sum = printed.iter().fold(Poly::zero(), |acc, p| &acc + &(p * p));
        let diff = &j - &sum;
        let identity = format!(
            "det(D psi) = {} ; (2y+2xy^2+x)^2 + x^2(2y^2+3)^2 = {}",
            print_canonical(&j),
            print_canonical(&sum)
        );
        let detail = if diff.is_zero() {
            "det(D psi) = (2y+2xy^2+x)^2 + x^2(2y^2+3)^2 holds".to_string()
        } else {
            format!(
                "det(D psi) - ((2y+2xy^2+x)^2 + x^2(2y^2+3)^2) = {} (not an identity)",
                print_canonical(&diff)
            )
        };
        checks.push(Check::new(
            "sos_identity",
            diff.is_zero(),
            detail,
            Evidence::identity(identity),
        ));

        let verified = psi_sos_parts_verified();
        let ok = verify_sos(&j, &verified);
        let statement = format!(
            "det(D psi) = {} = (2y+2xy^2+x)^2 + 2(xy)^2 + 3x^2",
            print_canonical(&j)
        );
        checks.push(Check::new(
            "sos_identity_unit_weights",
            ok,
            "det(D psi) = (2y+2xy^2+x)^2 + 2(xy)^2 + 3x^2",
            Evidence::identity(statement),
        ));

        let system = [printed[0].clone(), printed[1].clone()];
        checks.push(match exact_solutions(system.clone()) {
            Ok((sols, points)) => {
                let ok = sols.len() == 1 && points == vec![[rat(0), rat(0)]];
                let shown: Vec<String> = points.iter().map(|p| point_text(p)).collect();
                let detail = format!(
                    "common zeros of 2y+2xy^2+x and x(2y^2+3): {{{}}}",
                    shown.join(", ")
                );
                Check::new(
                    "sos_parts_common_zeros",
                    ok,
                    detail,
                    Evidence::Solutions {
                        system,
                        solutions: sols,
                    },
                )
            }
            Err(e) => Check::failed("sos_parts_common_zeros", e),
        });

        let ev = self.base_evidence();
        let mut c = fiber_check("origin_not_in_image_of_Ftilde", &ev.omitted[1], true);
        if c.verdict == CheckVerdict::Pass {
            c.detail
                .push_str("; Ftilde = F + (1, 0) so (0, 0) is omitted by Ftilde");
        }
        checks.push(c);

        let g = parse_poly("(x*y + 1)^2 + x^2").expect("literal");
        let parts = [parse_poly("x*y + 1").expect("literal"), Poly::var(Var::X)];
        checks.push(
            match nonvanishing_sign(&g, Some(&parts), self.config.seed) {
                Ok(cert) => {
                    let ok = cert.verdict.is_never_vanishes(Sign::Positive);
                    let detail = format!(
                        "(xy+1)^2 + x^2 never vanishes ({}), so f~ maps into R x R+",
                        cert.method.as_str()
                    );
                    Check::new(
                        "second_component_positive",
                        ok,
                        detail,
                        Evidence::Certificate(cert),
                    )
                }
                Err(e) => Check::failed("second_component_positive", e),
            },
        );

        let ftilde = builtin("ftilde").expect("builtin map");
        let inner = builtin("Ftilde").expect("builtin map");
        checks.push(match (ev.det.clone(), self.exact_fiber(&inner, &[rat(0), rat(0)])) {
            (Ok(cert), Ok(omitted)) => {
                let chain = NonvanishingEvidence::ChainRule(ChainRuleEvidence {
                    outer: psi.clone(),
                    inner: inner.clone(),
                    inner_certificate: cert.clone(),
                    outer_sos_parts: verified,
                    omitted: vec![omitted],
                });
                match chain.check(&ftilde) {
                    Ok(s) => Check::new(
                        "chain_rule_nonvanishing",
                        s == Sign::Positive,
                        "det(D f~) = det(D psi)(Ftilde) det(D Ftilde) with det(D psi) zero only at the omitted origin",
                        Evidence::Certificate(cert),
                    ),
                    Err(e) => Check::failed("chain_rule_nonvanishing", e),
                }
            }
            (Err(e), _) | (_, Err(e)) => Check::failed("chain_rule_nonvanishing", e),
        });

        let shift = PolyMap::translation(rat(1), rat(0));
        let w = ev.witness.clone().and_then(|w| {
            let w = transfer_witness(&w, &shift).map_err(|e| e.to_string())?;
            let w = transfer_witness(&w, &psi).map_err(|e| e.to_string())?;
            Ok(Witness {
                map_name: ftilde.name().to_string(),
                ..w
            })
        });
        checks.push(self.transfer_check(&w, Some(&ftilde)));
        ClaimReport {
            claim: ClaimId::Prop3,
            checks,
        }
    }

    pub fn verify_example4(&self) -> ClaimReport {
        let sev = self.surjective_evidence();
        let mut checks = Vec::new();
        let (f, chain) = match (&sev.f, &sev.chain) {
            (Ok(f), Ok(c)) => (f, c),
            (Err(e), _) | (_, Err(e)) => {
                for name in [
                    "unit_jacobian",
                    "lift_non_injective",
                    "lift_surjectivity_spot_check",
                ] {
                    checks.push(Check::skipped(
                        name,
                        &format!("no non-vanishing evidence for the base: {e}"),
                    ));
                }
                return ClaimReport {
                    claim: ClaimId::Example4,
                    checks,
                };
            }
        };
        let g = build_g(f, Some(chain));
        checks.push(
            match g
                .as_ref()
                .map_err(|e| e.to_string())
                .and_then(|g| rf_jacobian_det(g).map_err(|e| e.to_string()))
            {
                Ok(d) => {
                    let ok = d.constant_value() == Some(Rational::one());
                    let statement = format!(
                        "J(G) = {} for G = ({}, {}, z / ({}))",
                        d,
                        print_canonical(f.component(0)),
                        print_canonical(f.component(1)),
                        print_canonical(&f.jacobian_det().expect("planar"))
                    );
                    let shown = d
                        .constant_value()
                        .map(|c| rational_text(&c))
                        .unwrap_or_else(|| d.to_string());
                    Check::new(
                        "unit_jacobian",
                        ok,
                        format!("J(G) reduces to {shown}"),
                        Evidence::identity(statement),
                    )
                }
                Err(e) => Check::failed("unit_jacobian", e),
            },
        );

        checks.push(match (&g, &sev.witness) {
            (Ok(g), Ok(w)) => {
                let third = &g.components()[2];
                let z_free = third.num().specialize(Var::Z, &Rational::zero()).is_zero();
                let ok = w.is_valid() && z_free;
                let detail = format!(
                    "both witness boxes lifted to z = 0 map to ({}, {}, 0)",
                    rational_text(&w.target[0]),
                    rational_text(&w.target[1])
                );
                Check::new(
                    "lift_non_injective",
                    ok,
                    detail,
                    Evidence::Witness(w.clone()),
                )
            }
            (Err(e), _) => Check::failed("lift_non_injective", e),
            (_, Err(e)) => Check::failed("lift_non_injective", e),
        });

        checks.push(self.lift_samples(f));
        ClaimReport {
            claim: ClaimId::Example4,
            checks,
        }
    }

    /// Approximate preimages of `(u, v, w)` under the lift: a staged fiber
    /// for `(u, v)`, Newton polish on `f`, then `z = w det(D f)(x, y)`.
    fn lift_samples(&self, f: &PolyMap) -> Check {
        let name = "lift_surjectivity_spot_check";
        let phi = builtin("phi").expect("builtin map");
        let jf = match f.jacobian_det() {
            Ok(j) => j,
            Err(e) => return Check::failed(name, e),
        };
        let fsys = float_system(f);
        let tol = ratio(1, 1_000_000);
        let mut planar: Vec<([Rational; 2], Option<([Rational; 2], Rational)>)> = Vec::new();
        let mut samples = Vec::new();
        for t in &self.config.lift_grid {
            let uv = [t[0].clone(), t[1].clone()];
            if !planar.iter().any(|(k, _)| k == &uv) {
                let staged = match staged_fiber(&phi, &self.config.base, &uv, &self.config.newton) {
                    Ok(s) => s,
                    Err(e) => return Check::failed(name, e),
                };
                let tf = [rational_to_f64(&uv[0]), rational_to_f64(&uv[1])];
                let best = staged
                    .result
                    .approximations
                    .iter()
                    .filter_map(|a| polish(&fsys, tf, a.point, &self.config.newton))
                    .min_by(|a, b| a.residual.total_cmp(&b.residual));
                let exact = best.and_then(|b| {
                    let x = f64_to_rational(b.point[0])?;
                    let y = f64_to_rational(b.point[1])?;
                    let img = f.eval(&[x.clone(), y.clone()]).expect("planar");
                    let r = (&img[0] - &uv[0]).abs().max((&img[1] - &uv[1]).abs());
                    Some(([x, y], r))
                });
                planar.push((uv.clone(), exact));
            }
            let found = planar
                .iter()
                .find(|(k, _)| k == &uv)
                .and_then(|(_, v)| v.clone());
            samples.push(match found {
                Some(([x, y], r)) => {
                    let z = &t[2] * jf.eval(&[x.clone(), y.clone()]).expect("planar");
                    LiftSample {
                        target: t.clone(),
                        preimage: Some([x, y, z]),
                        residual: Some(r),
                    }
                }
                None => LiftSample {
                    target: t.clone(),
                    preimage: None,
                    residual: None,
                },
            });
        }
        let bad: Vec<String> = samples
            .iter()
            .filter(|s| s.residual.as_ref().is_none_or(|r| r >= &tol))
            .map(|s| point_text(&s.target))
            .collect();
        let detail = if bad.is_empty() {
            format!(
                "spot check: {} targets, every residual < 1e-6",
                samples.len()
            )
        } else {
            format!(
                "spot check: no preimage with residual < 1e-6 for {}",
                bad.join(", ")
            )
        };
        Check::new(name, bad.is_empty(), detail, Evidence::Samples(samples))
    }
}

/// `det(D phi) = (3x^2 - 3y^2 - 3)^2 + (6xy)^2`.
pub fn phi_sos_parts() -> Vec<Poly> {
    vec![
        parse_poly("3*x^2 - 3*y^2 - 3").expect("literal"),
        parse_poly("6*x*y").expect("literal"),
    ]
}

pub fn verify_theorem1() -> ClaimReport {
    ClaimContext::new(ClaimConfig::default()).verify_theorem1()
}

pub fn verify_prop2() -> ClaimReport {
    ClaimContext::new(ClaimConfig::default()).verify_prop2()
}

pub fn verify_prop3() -> ClaimReport {
    ClaimContext::new(ClaimConfig::default()).verify_prop3()
}

pub fn verify_example4() -> ClaimReport {
    ClaimContext::new(ClaimConfig::default()).verify_example4()
}
