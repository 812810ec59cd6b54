use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use num_traits::Signed;
use serde_json::Value;

use polycert::certify::{
    distance_critical_at, nonvanishing_sign, sos_certificate, Method, Verdict,
};
use polycert::claims::{
    find_witness, CheckVerdict, ClaimConfig, ClaimContext, ClaimId, GridSpec, Witness,
};
use polycert::maps::PolyMap;
use polycert::parser::{parse_point, parse_poly, parse_rational, print_canonical, rational_text};
use polycert::scalar::rational_to_f64;
use polycert::systems::{
    exact_eligible, fiber, fiber_system, solve_bivariate, FiberMode, FiberResult, NewtonOptions,
    SolutionBox,
};
use polycert::{Poly, Rational};

use crate::{json, scan, CliError, Command, ModeArg, Status};

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<Status, CliError> {
    let mut text = String::new();
    let status = match cmd {
        Command::Verify {
            claim,
            seed,
            out: path,
        } => verify(&claim, seed, path.as_deref(), &mut text)?,
        Command::Fiber {
            map,
            target,
            mode,
            width,
            out: path,
        } => fiber_cmd(
            &map.resolve()?,
            &target,
            mode,
            width.as_deref(),
            path.as_deref(),
            &mut text,
        )?,
        Command::Jacobian {
            map,
            at,
            certify,
            seed,
            out: path,
        } => jacobian(
            &map.resolve()?,
            at.as_deref(),
            certify,
            seed,
            path.as_deref(),
            &mut text,
        )?,
        Command::Scan {
            map,
            rect,
            steps,
            mode,
            out: path,
        } => scan_cmd(&map.resolve()?, &rect, steps, mode, &path, &mut text)?,
        Command::Witness {
            map,
            grid,
            out: path,
        } => witness(&map.resolve()?, grid.as_deref(), path.as_deref(), &mut text)?,
        Command::Eval { map, at } => eval(&map.resolve()?, &at, &mut text)?,
        Command::Replay { cert } => replay(&cert, &mut text)?,
        Command::Parse { poly } => {
            writeln!(text, "{}", print_canonical(&parse_poly(&poly)?)).unwrap();
            Status::Ok
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    Ok(status)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn point_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(rational_text).collect();
    format!("({})", parts.join(", "))
}

fn target(text: &str) -> Result<[Rational; 2], CliError> {
    parse_point(text)?
        .try_into()
        .map_err(|_| CliError::Usage(format!("expected a point \"a,b\", got \"{text}\"")))
}

fn mode_for(m: &PolyMap, mode: Option<ModeArg>) -> FiberMode {
    match mode {
        Some(ModeArg::Exact) => FiberMode::Exact,
        Some(ModeArg::Approx) => FiberMode::Approximate,
        None if exact_eligible(m) => FiberMode::Exact,
        None => FiberMode::Approximate,
    }
}

fn box_line(b: &SolutionBox) -> String {
    match b.exact_point() {
        Some(p) => format!("  {} exact", point_text(&p)),
        None => {
            let mid = b.midpoint();
            format!(
                "  x in [{}, {}], y in [{}, {}] ~ ({:e}, {:e}) {}",
                rational_text(b.x().lo()),
                rational_text(b.x().hi()),
                rational_text(b.y().lo()),
                rational_text(b.y().hi()),
                rational_to_f64(&mid[0]),
                rational_to_f64(&mid[1]),
                match b.multiplicity() {
                    polycert::systems::Multiplicity::Simple => "simple",
                    polycert::systems::Multiplicity::Unknown => "multiplicity unknown",
                }
            )
        }
    }
}

fn verify(
    claim: &str,
    seed: u64,
    path: Option<&Path>,
    text: &mut String,
) -> Result<Status, CliError> {
    let ids = if claim == "all" {
        ClaimId::ALL.to_vec()
    } else {
        vec![ClaimId::parse(claim).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown claim '{claim}'; expected theorem1, prop2, prop3, example4 or all"
            ))
        })?]
    };
    let ctx = ClaimContext::new(ClaimConfig::with_seed(seed));
    let reports: Vec<_> = ids.iter().map(|&id| ctx.verify(id)).collect();
    for r in &reports {
        writeln!(text, "{}: {}", r.claim, r.overall()).unwrap();
        for c in &r.checks {
            writeln!(text, "  [{}] {}: {}", c.verdict, c.name, c.detail).unwrap();
        }
    }
    let pass = reports.iter().all(|r| r.overall() == CheckVerdict::Pass);
    writeln!(text, "overall: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    if let Some(p) = path {
        write_file(p, &json::to_text(&json::report(seed, &reports)))?;
    }
    Ok(if pass { Status::Ok } else { Status::Failed })
}

fn fiber_cmd(
    m: &PolyMap,
    target_text: &str,
    mode: Option<ModeArg>,
    width: Option<&str>,
    path: Option<&Path>,
    text: &mut String,
) -> Result<Status, CliError> {
    let t = target(target_text)?;
    let mode = mode_for(m, mode);
    let width = width.map(parse_rational).transpose()?;
    if width.as_ref().is_some_and(|w| !w.is_positive()) {
        return Err(CliError::Usage("--width must be positive".into()));
    }
    let mut r = fiber(m, &t, mode, &NewtonOptions::default())?;
    if let Some(w) = &width {
        r.solutions = r
            .solutions
            .iter()
            .map(|b| b.refine(w))
            .collect::<Result<_, _>>()?;
    }
    describe_fiber(&r, text);
    if let Some(p) = path {
        write_file(
            p,
            &json::to_text(&json::fiber(&r, &fiber_system(m, &t), width.as_ref())),
        )?;
    }
    Ok(Status::Ok)
}

fn describe_fiber(r: &FiberResult, text: &mut String) {
    match (r.mode, r.count()) {
        (FiberMode::Exact, 0) => writeln!(text, "EMPTY (certified)").unwrap(),
        (FiberMode::Exact, n) => {
            writeln!(
                text,
                "{n} certified solution{}",
                if n == 1 { "" } else { "s" }
            )
            .unwrap();
            for b in &r.solutions {
                writeln!(text, "{}", box_line(b)).unwrap();
            }
        }
        (FiberMode::Approximate, 0) => {
            writeln!(text, "no approximate solutions found (not a certificate)").unwrap()
        }
        (FiberMode::Approximate, n) => {
            writeln!(
                text,
                "{n} approximate solution{} (lower bound)",
                if n == 1 { "" } else { "s" }
            )
            .unwrap();
            for a in &r.approximations {
                writeln!(
                    text,
                    "  ({:e}, {:e}) residual {:e}",
                    a.point[0], a.point[1], a.residual
                )
                .unwrap();
            }
        }
    }
}

fn jacobian(
    m: &PolyMap,
    at: Option<&str>,
    certify: bool,
    seed: u64,
    path: Option<&Path>,
    text: &mut String,
) -> Result<Status, CliError> {
    if path.is_some() && !certify {
        return Err(CliError::Usage("--out needs --certify".into()));
    }
    let j = m.jacobian_det()?;
    match at {
        Some(a) => {
            let p = parse_point(a)?;
            let v = j
                .clone()
                .with_nvars(p.len())
                .eval(&p)
                .map_err(polycert::maps::MapError::from)?;
            writeln!(
                text,
                "det(D {}){} = {}",
                m.name(),
                point_text(&p),
                rational_text(&v)
            )
            .unwrap();
        }
        None if !certify => {
            writeln!(text, "det(D {}) = {}", m.name(), print_canonical(&j)).unwrap()
        }
        None => {}
    }
    if certify {
        let c = nonvanishing_sign(&j, None, seed)?;
        let how = match &c.center {
            Some(cn) => format!("{} at center {}", c.method.as_str(), point_text(cn)),
            None => c.method.as_str().to_string(),
        };
        let v = json::verdict(&c.verdict);
        writeln!(
            text,
            "det(D {}): {} ({how})",
            m.name(),
            v.as_str().unwrap_or_default()
        )
        .unwrap();
        if let Verdict::Vanishes(w) = &c.verdict {
            let at = match w {
                polycert::certify::ZeroWitness::Point(p) => point_text(p),
                polycert::certify::ZeroWitness::Box(b) => box_line(b).trim().to_string(),
            };
            writeln!(text, "  zero at {at}").unwrap();
        }
        if let Some(p) = path {
            write_file(p, &json::to_text(&json::certificate(&c)))?;
        }
    }
    Ok(Status::Ok)
}

fn scan_cmd(
    m: &PolyMap,
    rect: &str,
    steps: u32,
    mode: Option<ModeArg>,
    path: &Path,
    text: &mut String,
) -> Result<Status, CliError> {
    let rect = scan::parse_rect(rect)?;
    let mode = mode_for(m, mode);
    let rows = scan::scan(m, &rect, steps, mode, &NewtonOptions::default())?;
    write_file(path, &scan::csv(&rows))?;
    let side = scan::sidecar_path(path);
    write_file(
        &side,
        &json::to_text(&scan::sidecar(m.name(), &rect, steps, mode, &rows)),
    )?;
    writeln!(
        text,
        "{} rows ({}) written to {} and {}",
        rows.len(),
        mode.as_str(),
        path.display(),
        side.display()
    )
    .unwrap();
    Ok(Status::Ok)
}

fn witness(
    m: &PolyMap,
    grid: Option<&str>,
    path: Option<&Path>,
    text: &mut String,
) -> Result<Status, CliError> {
    let grid = grid.map(GridSpec::parse).transpose()?.unwrap_or_default();
    let w = find_witness(m, &grid)?;
    describe_witness(&w, text);
    if let Some(p) = path {
        write_file(p, &json::to_text(&json::witness(&w)))?;
    }
    Ok(Status::Ok)
}

fn describe_witness(w: &Witness, text: &mut String) {
    writeln!(
        text,
        "two certified preimages of {} under {}",
        point_text(&w.target),
        w.map_name
    )
    .unwrap();
    for b in &w.points {
        writeln!(text, "{}", box_line(b)).unwrap();
    }
    writeln!(text, "boxes disjoint: {}", w.is_valid()).unwrap();
}

fn eval(m: &PolyMap, at: &str, text: &mut String) -> Result<Status, CliError> {
    let p = parse_point(at)?;
    writeln!(text, "{}", point_text(&m.eval(&p)?)).unwrap();
    Ok(Status::Ok)
}

fn replay(path: &Path, text: &mut String) -> Result<Status, CliError> {
    let raw = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let rec: Value = serde_json::from_str(&raw).map_err(|e| CliError::Record(e.to_string()))?;
    let kind = json::str_field(&rec, "kind")?;
    let (ok, what) = match kind {
        "sign_certificate" => replay_certificate(&rec)?,
        "fiber" => replay_fiber(&rec)?,
        "witness" => replay_witness(&rec)?,
        "claim_report" => replay_report(&rec)?,
        other => return Err(CliError::Record(format!("unknown kind '{other}'"))),
    };
    if ok {
        writeln!(text, "REPLAY OK: {kind} {what}").unwrap();
        Ok(Status::Ok)
    } else {
        writeln!(text, "REPLAY MISMATCH: {kind} {what}").unwrap();
        Ok(Status::Failed)
    }
}

fn pair<T>(v: Vec<T>, what: &str) -> Result<[T; 2], CliError> {
    v.try_into()
        .map_err(|_| CliError::Record(format!("'{what}' must have two entries")))
}

fn replay_certificate(rec: &Value) -> Result<(bool, String), CliError> {
    let g = parse_poly(json::str_field(rec, "polynomial")?)?;
    let seed = json::u64_field(rec, "seed")?;
    let fresh = match json::read_method(rec)? {
        Method::Sos => {
            let parts = json::read_polys(rec, "sos_parts")?;
            sos_certificate(&g, &parts, seed)?
        }
        Method::DistanceCritical => {
            let c = pair(json::read_rationals(rec, "center")?, "center")?;
            distance_critical_at(&g, &c, seed)?
        }
    };
    let verdict = json::str_field(rec, "verdict")?.to_string();
    Ok((
        fresh.is_some_and(|c| &json::certificate(&c) == rec),
        verdict,
    ))
}

fn recorded_system(rec: &Value) -> Result<[Poly; 2], CliError> {
    pair(json::read_polys(rec, "system")?, "system")
}

fn replay_fiber(rec: &Value) -> Result<(bool, String), CliError> {
    if json::str_field(rec, "mode")? != FiberMode::Exact.as_str() {
        return Err(CliError::Record(
            "approximate fibers are not certificates".into(),
        ));
    }
    let [f, g] = recorded_system(rec)?;
    let mut sols = solve_bivariate(&f, &g)?;
    if json::opt_field(rec, "width").is_some() {
        let w = parse_rational(json::str_field(rec, "width")?)?;
        sols = sols
            .iter()
            .map(|b| b.refine(&w))
            .collect::<Result<_, _>>()?;
    }
    let ok = json::opt_field(rec, "solutions") == Some(&json::solutions(&sols));
    Ok((ok, format!("{} solutions", sols.len())))
}

fn replay_witness(rec: &Value) -> Result<(bool, String), CliError> {
    let [f, g] = recorded_system(rec)?;
    let fresh: Vec<Value> = solve_bivariate(&f, &g)?
        .iter()
        .map(json::solution)
        .collect();
    let recorded = json::opt_field(rec, "solutions")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Record("missing field 'solutions'".into()))?;
    let found: Vec<Option<usize>> = recorded
        .iter()
        .map(|s| fresh.iter().position(|f| f == s))
        .collect();
    let ok = matches!(found.as_slice(), [Some(a), Some(b)] if a != b);
    Ok((
        ok,
        format!(
            "{} of {} boxes re-derived",
            found.iter().flatten().count(),
            recorded.len()
        ),
    ))
}

fn replay_report(rec: &Value) -> Result<(bool, String), CliError> {
    let seed = json::u64_field(rec, "seed")?;
    let claims = json::opt_field(rec, "claims")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Record("missing field 'claims'".into()))?;
    let ids = claims
        .iter()
        .map(|c| {
            json::str_field(c, "claim").and_then(|s| {
                ClaimId::parse(s).ok_or_else(|| CliError::Record(format!("unknown claim '{s}'")))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ctx = ClaimContext::new(ClaimConfig::with_seed(seed));
    let reports: Vec<_> = ids.iter().map(|&id| ctx.verify(id)).collect();
    let fresh = json::report(seed, &reports);
    Ok((&fresh == rec, format!("{} claims", reports.len())))
}
