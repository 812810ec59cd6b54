//! Fiber-cardinality scans over rectangular target grids.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use polycert::maps::PolyMap;
use polycert::parser::parse_point;
use polycert::scalar::rational_to_f64;
use polycert::systems::{fiber, FiberMode, NewtonOptions, SolveError};
use polycert::Rational;

use crate::{json as js, CliError};

pub const CSV_HEADER: &str = "target_x,target_y,count,mode";

/// One grid node: certified count in exact mode, a lower bound otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub target: [Rational; 2],
    pub count: usize,
    pub mode: FiberMode,
}

/// `[x0, x1, y0, y1]` from `"x0,x1,y0,y1"`.
pub fn parse_rect(text: &str) -> Result<[Rational; 4], CliError> {
    let v: [Rational; 4] = parse_point(text)?
        .try_into()
        .map_err(|_| CliError::Usage("--rect expects x0,x1,y0,y1".into()))?;
    if v[0] > v[1] || v[2] > v[3] {
        return Err(CliError::Usage("--rect needs x0 <= x1 and y0 <= y1".into()));
    }
    Ok(v)
}

/// Nodes with `x` outer and `y` inner; `steps == 0` gives the corner `(x0, y0)`.
pub fn nodes(rect: &[Rational; 4], steps: u32) -> Vec<[Rational; 2]> {
    if steps == 0 {
        return vec![[rect[0].clone(), rect[2].clone()]];
    }
    let n = Rational::from_integer(steps.into());
    let at = |lo: &Rational, hi: &Rational, i: u32| {
        lo + (hi - lo) * Rational::from_integer(i.into()) / &n
    };
    let mut out = Vec::with_capacity(((steps + 1) * (steps + 1)) as usize);
    for i in 0..=steps {
        let x = at(&rect[0], &rect[1], i);
        for j in 0..=steps {
            out.push([x.clone(), at(&rect[2], &rect[3], j)]);
        }
    }
    out
}

/// Rows in node order; targets are solved in parallel.
pub fn scan(
    m: &PolyMap,
    rect: &[Rational; 4],
    steps: u32,
    mode: FiberMode,
    opts: &NewtonOptions,
) -> Result<Vec<ScanRow>, SolveError> {
    nodes(rect, steps)
        .into_par_iter()
        .map(|t| {
            let r = fiber(m, &t, mode, opts)?;
            Ok(ScanRow {
                count: r.count(),
                target: t,
                mode,
            })
        })
        .collect()
}

/// `%.12g`-style rendering.
pub fn decimal(r: &Rational) -> String {
    let v = rational_to_f64(r);
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        trim_zeros(format!("{:.*}", (11 - exp) as usize, v))
    } else {
        format!("{}e{exp}", trim_zeros(mant.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn csv(rows: &[ScanRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            decimal(&r.target[0]),
            decimal(&r.target[1]),
            r.count,
            r.mode.as_str()
        ));
    }
    s
}

/// Exact companion of the CSV.
pub fn sidecar(
    map: &str,
    rect: &[Rational; 4],
    steps: u32,
    mode: FiberMode,
    rows: &[ScanRow],
) -> Value {
    json!({
        "kind": "scan",
        "map": map,
        "rect": js::rationals(rect),
        "steps": steps,
        "mode": mode.as_str(),
        "rows": Value::Array(rows.iter().map(|r| json!({ "target": js::rationals(&r.target), "count": r.count })).collect()),
    })
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let p = csv.with_extension("json");
    if p == csv {
        PathBuf::from(format!("{}.exact.json", csv.display()))
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polycert::{rat, ratio};

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(0)), "0");
        assert_eq!(decimal(&rat(-2)), "-2");
        assert_eq!(decimal(&ratio(1, 2)), "0.5");
        assert_eq!(decimal(&ratio(1, 3)), "0.333333333333");
        assert_eq!(decimal(&ratio(-2, 3)), "-0.666666666667");
        assert_eq!(decimal(&rat(123456789012345)), "1.23456789012e14");
        assert_eq!(decimal(&ratio(1, 1_000_000)), "1e-6");
    }

    #[test]
    fn grid_nodes() {
        let r = parse_rect("-2,2,-2,2").unwrap();
        let n = nodes(&r, 4);
        assert_eq!(n.len(), 25);
        assert_eq!(n[0], [rat(-2), rat(-2)]);
        assert_eq!(n[1], [rat(-2), rat(-1)]);
        assert_eq!(n[24], [rat(2), rat(2)]);
        assert_eq!(nodes(&r, 0), vec![[rat(-2), rat(-2)]]);
        assert!(parse_rect("1,0,0,1").is_err());
        assert!(parse_rect("0,1,0").is_err());
    }
}
