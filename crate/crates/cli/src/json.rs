//! Exact JSON records for certificates, fibers, witnesses and reports.
//!
//! Rationals are `"num/den"` strings in lowest terms; polynomials use the
//! canonical text grammar. Object keys are sorted, so equal records
//! serialize to equal bytes.

use serde_json::{json, Value};

use polycert::certify::{Method, SignCertificate, Verdict, ZeroWitness};
use polycert::claims::{Check, ClaimReport, Evidence, LiftSample, Witness};
use polycert::parser::{parse_poly, parse_rational, print_canonical};
use polycert::systems::{ApproxPoint, FiberMode, FiberResult, Multiplicity, SolutionBox};
use polycert::{Poly, RatInterval, RatUPoly, Rational, Var};

use crate::CliError;

pub fn rational(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

pub fn poly(p: &Poly) -> Value {
    Value::String(print_canonical(p))
}

fn upoly(u: &RatUPoly) -> Value {
    poly(&Poly::from_univariate(u, Var::X))
}

fn float(v: f64) -> Value {
    // shortest round-trip text; no floats in the numeric JSON sense
    Value::String(format!("{v:e}"))
}

fn interval(iv: &RatInterval) -> Value {
    json!([rational(iv.lo()), rational(iv.hi())])
}

pub fn solution(b: &SolutionBox) -> Value {
    let multiplicity = match b.multiplicity() {
        Multiplicity::Simple => "simple",
        Multiplicity::Unknown => "unknown",
    };
    json!({ "x": interval(b.x()), "y": interval(b.y()), "multiplicity": multiplicity })
}

pub fn solutions(bs: &[SolutionBox]) -> Value {
    Value::Array(bs.iter().map(solution).collect())
}

fn approx(p: &ApproxPoint) -> Value {
    json!({ "point": [float(p.point[0]), float(p.point[1])], "residual": float(p.residual) })
}

pub fn system(s: &[Poly; 2]) -> Value {
    json!([poly(&s[0]), poly(&s[1])])
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::NeverVanishes(s) => Value::String(format!("NeverVanishes({})", s.symbol())),
        Verdict::Vanishes(_) => Value::String("Vanishes".into()),
    }
}

fn zero_witness(v: &Verdict) -> Value {
    match v {
        Verdict::NeverVanishes(_) => Value::Null,
        Verdict::Vanishes(ZeroWitness::Point(p)) => json!({ "point": rationals(p) }),
        Verdict::Vanishes(ZeroWitness::Box(b)) => json!({ "box": solution(b) }),
    }
}

pub fn certificate(c: &SignCertificate) -> Value {
    json!({
        "kind": "sign_certificate",
        "polynomial": poly(&c.polynomial),
        "method": c.method.as_str(),
        "seed": c.seed,
        "center": c.center.as_ref().map(|p| rationals(p)),
        "system": c.auxiliary_system.as_ref().map(system),
        "sos_parts": c.sos_parts.as_ref().map(|ps| Value::Array(ps.iter().map(poly).collect())),
        "verdict": verdict(&c.verdict),
        "zero_witness": zero_witness(&c.verdict),
    })
}

/// `system` is the exact fiber system `m - t`.
pub fn fiber(r: &FiberResult, system_polys: &[Poly; 2], width: Option<&Rational>) -> Value {
    let exact = r.mode == FiberMode::Exact;
    json!({
        "kind": "fiber",
        "map": r.map_name,
        "target": rationals(&r.target),
        "mode": r.mode.as_str(),
        "system": system(system_polys),
        "width": width.map(rational),
        "count": r.count(),
        "verdict": match (exact, r.is_empty()) {
            (true, true) => "EMPTY",
            (true, false) => "NONEMPTY",
            (false, true) => "NONE_FOUND",
            (false, false) => "FOUND",
        },
        "solutions": solutions(&r.solutions),
        "approximations": Value::Array(r.approximations.iter().map(approx).collect()),
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "kind": "witness",
        "map": w.map_name,
        "target": rationals(&w.target),
        "domain_point": w.domain_point.as_ref().map(|p| rationals(p)),
        "system": system(w.points[0].system()),
        "solutions": solutions(&w.points),
        "valid": w.is_valid(),
    })
}

fn sample(s: &LiftSample) -> Value {
    json!({
        "target": rationals(&s.target),
        "preimage": s.preimage.as_ref().map(|p| rationals(p)),
        "residual": s.residual.as_ref().map(rational),
    })
}

fn fiber_summary(r: &FiberResult) -> Value {
    json!({
        "kind": "fiber",
        "map": r.map_name,
        "target": rationals(&r.target),
        "mode": r.mode.as_str(),
        "count": r.count(),
        "solutions": solutions(&r.solutions),
    })
}

pub fn evidence(e: &Evidence) -> Value {
    let body = match e {
        Evidence::Certificate(c) => certificate(c),
        Evidence::Fiber(r) => fiber_summary(r),
        Evidence::Fibers(rs) => Value::Array(rs.iter().map(fiber_summary).collect()),
        Evidence::Witness(w) => witness(w),
        Evidence::Roots {
            polynomial,
            rational: rs,
            irrational,
        } => {
            json!({ "polynomial": upoly(polynomial), "rational": rationals(rs), "irrational": irrational })
        }
        Evidence::Solutions {
            system: s,
            solutions: bs,
        } => json!({ "system": system(s), "solutions": solutions(bs) }),
        Evidence::Identity { statement, hash } => json!({ "statement": statement, "sha256": hash }),
        Evidence::Samples(ss) => Value::Array(ss.iter().map(sample).collect()),
        Evidence::Error(msg) => json!({ "message": msg }),
    };
    json!({ "type": e.kind(), "data": body })
}

fn check(c: &Check) -> Value {
    json!({
        "name": c.name,
        "verdict": c.verdict.as_str(),
        "required": c.required,
        "detail": c.detail,
        "evidence": evidence(&c.evidence),
    })
}

pub fn claim(r: &ClaimReport) -> Value {
    json!({
        "claim": r.claim.as_str(),
        "verdict": r.overall().as_str(),
        "checks": Value::Array(r.checks.iter().map(check).collect()),
    })
}

pub fn report(seed: u64, reports: &[ClaimReport]) -> Value {
    let pass = reports
        .iter()
        .all(|r| r.overall() == polycert::claims::CheckVerdict::Pass);
    json!({
        "kind": "claim_report",
        "seed": seed,
        "claims": Value::Array(reports.iter().map(claim).collect()),
        "verdict": if pass { "PASS" } else { "FAIL" },
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

// Reading records back.

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .filter(|f| !f.is_null())
        .ok_or_else(|| CliError::Record(format!("missing field '{key}'")))
}

pub fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, CliError> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| CliError::Record(format!("field '{key}' is not a string")))
}

pub fn u64_field(v: &Value, key: &str) -> Result<u64, CliError> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| CliError::Record(format!("field '{key}' is not a natural number")))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|f| !f.is_null())
}

fn strings<'a>(v: &'a Value, key: &str) -> Result<Vec<&'a str>, CliError> {
    let arr = field(v, key)?
        .as_array()
        .ok_or_else(|| CliError::Record(format!("field '{key}' is not an array")))?;
    arr.iter()
        .map(|e| {
            e.as_str()
                .ok_or_else(|| CliError::Record(format!("field '{key}' holds a non-string")))
        })
        .collect()
}

pub fn read_rationals(v: &Value, key: &str) -> Result<Vec<Rational>, CliError> {
    strings(v, key)?
        .into_iter()
        .map(|s| Ok(parse_rational(s)?))
        .collect()
}

pub fn read_polys(v: &Value, key: &str) -> Result<Vec<Poly>, CliError> {
    strings(v, key)?
        .into_iter()
        .map(|s| Ok(parse_poly(s)?))
        .collect()
}

pub fn read_method(v: &Value) -> Result<Method, CliError> {
    match str_field(v, "method")? {
        "sos" => Ok(Method::Sos),
        "distance_critical" => Ok(Method::DistanceCritical),
        other => Err(CliError::Record(format!("unknown method '{other}'"))),
    }
}
