//! Damped Newton iteration from a start grid. Results are approximations
//! with no completeness guarantee.

use num_traits::Float;

use crate::poly::Polynomial;
use crate::Scalar;

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    /// Starts per axis.
    pub grid: usize,
    /// Starts span `[-half_width, half_width]^2`.
    pub half_width: f64,
    /// Relative distance below which two limits are merged.
    pub dedup_tol: f64,
    /// Residual accepted as converged, relative to the monomial scale.
    pub residual_tol: f64,
    /// Largest final Newton correction accepted, relative to `1 + |p|`.
    /// Rejects starts that drift along asymptotic curves.
    pub step_tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            grid: 41,
            half_width: 10.0,
            dedup_tol: 1e-6,
            residual_tol: 1e-9,
            step_tol: 1e-6,
            max_iter: 100,
        }
    }
}

/// A converged Newton limit and its final residual norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxPoint {
    pub point: [f64; 2],
    pub residual: f64,
}

/// Dense evaluator for a bivariate polynomial, with the monomial scale
/// `sum |c| |x|^a |y|^b` used for relative residuals.
struct Compiled<T> {
    terms: Vec<(T, usize, usize)>,
    dx: usize,
    dy: usize,
}

impl<T: Float + Scalar> Compiled<T> {
    fn new(p: &Polynomial<T>) -> Self {
        let terms: Vec<_> = p
            .terms()
            .map(|(m, c)| (*c, m.0[0] as usize, m.0[1] as usize))
            .collect();
        let dx = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let dy = terms.iter().map(|t| t.2).max().unwrap_or(0);
        Compiled { terms, dx, dy }
    }

    fn powers(v: T, n: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = T::one();
        for _ in 0..=n {
            out.push(acc);
            acc *= v;
        }
        out
    }

    /// Value, partials, and magnitude scale at `(x, y)`.
    fn eval(&self, x: T, y: T) -> [T; 4] {
        let px = Self::powers(x, self.dx);
        let py = Self::powers(y, self.dy);
        let mut v = T::zero();
        let mut gx = T::zero();
        let mut gy = T::zero();
        let mut scale = T::zero();
        for &(c, a, b) in &self.terms {
            let mono = px[a] * py[b];
            v += c * mono;
            scale += (c * mono).abs();
            if a > 0 {
                gx += c * T::from(a).unwrap() * px[a - 1] * py[b];
            }
            if b > 0 {
                gy += c * T::from(b).unwrap() * px[a] * py[b - 1];
            }
        }
        [v, gx, gy, scale]
    }
}

fn norm<T: Float>(a: T, b: T) -> T {
    a.hypot(b)
}

/// Newton limits of `sys = target` from a uniform start grid, deduplicated
/// and sorted. Iteration is in `T`; results are reported in `f64`.
pub fn solve_approx<T: Float + Scalar>(
    sys: &[Polynomial<T>; 2],
    target: [T; 2],
    opts: &NewtonOptions,
) -> Vec<ApproxPoint> {
    let f = Compiled::new(&sys[0]);
    let g = Compiled::new(&sys[1]);
    let n = opts.grid.max(1);
    let h = T::from(opts.half_width).unwrap();
    let step = if n > 1 {
        (h + h) / T::from(n - 1).unwrap()
    } else {
        T::zero()
    };
    let tol = T::from(opts.residual_tol).unwrap();
    let step_tol = T::from(opts.step_tol).unwrap();
    let mut found = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let x0 = if n > 1 {
                -h + step * T::from(i).unwrap()
            } else {
                T::zero()
            };
            let y0 = if n > 1 {
                -h + step * T::from(j).unwrap()
            } else {
                T::zero()
            };
            if let Some(p) = newton_from(&f, &g, target, x0, y0, tol, step_tol, opts.max_iter) {
                found.push(p);
            }
        }
    }
    dedup(found, opts.dedup_tol)
}

/// Newton from a single start; `None` if it does not converge.
pub fn polish<T: Float + Scalar>(
    sys: &[Polynomial<T>; 2],
    target: [T; 2],
    start: [T; 2],
    opts: &NewtonOptions,
) -> Option<ApproxPoint> {
    let f = Compiled::new(&sys[0]);
    let g = Compiled::new(&sys[1]);
    let tol = T::from(opts.residual_tol).unwrap();
    let step_tol = T::from(opts.step_tol).unwrap();
    newton_from(
        &f,
        &g,
        target,
        start[0],
        start[1],
        tol,
        step_tol,
        opts.max_iter,
    )
}

fn newton_from<T: Float + Scalar>(
    f: &Compiled<T>,
    g: &Compiled<T>,
    target: [T; 2],
    mut x: T,
    mut y: T,
    tol: T,
    step_tol: T,
    max_iter: usize,
) -> Option<ApproxPoint> {
    let residual = |x: T, y: T| {
        let a = f.eval(x, y);
        let b = g.eval(x, y);
        (a, b, norm(a[0] - target[0], b[0] - target[1]))
    };
    let (mut ef, mut eg, mut r) = residual(x, y);
    let eps = T::epsilon();
    for _ in 0..max_iter {
        if r == T::zero() {
            break;
        }
        let det = ef[1] * eg[2] - ef[2] * eg[1];
        if det == T::zero() || !det.is_finite() {
            break;
        }
        let (u, v) = (ef[0] - target[0], eg[0] - target[1]);
        let dx = (u * eg[2] - v * ef[2]) / det;
        let dy = (ef[1] * v - eg[1] * u) / det;
        let mut lam = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let (nx, ny) = (x - lam * dx, y - lam * dy);
            let (nf, ng, nr) = residual(nx, ny);
            if nr.is_finite() && nr < r {
                x = nx;
                y = ny;
                ef = nf;
                eg = ng;
                r = nr;
                accepted = true;
                break;
            }
            lam /= T::one() + T::one();
        }
        if !accepted || (lam * norm(dx, dy)) <= eps * (T::one() + norm(x, y)) {
            break;
        }
    }
    let scale = ef[3] + eg[3] + target[0].abs() + target[1].abs();
    let det = ef[1] * eg[2] - ef[2] * eg[1];
    if !(x.is_finite() && y.is_finite() && det.is_finite()) || det == T::zero() {
        return None;
    }
    let (u, v) = (ef[0] - target[0], eg[0] - target[1]);
    let step = norm((u * eg[2] - v * ef[2]) / det, (ef[1] * v - eg[1] * u) / det);
    let ok = r <= tol * scale.max(T::one()) && step <= step_tol * (T::one() + norm(x, y));
    ok.then(|| ApproxPoint {
        point: [x.to_f64_lossy(), y.to_f64_lossy()],
        residual: r.to_f64_lossy(),
    })
}

/// Merges points closer than `tol * (1 + |p|)`, keeping the one with the
/// smaller residual, and sorts lexicographically.
pub fn dedup(points: Vec<ApproxPoint>, tol: f64) -> Vec<ApproxPoint> {
    let mut kept: Vec<ApproxPoint> = Vec::new();
    for p in points {
        let near = kept.iter_mut().find(|q| {
            let d = (p.point[0] - q.point[0]).hypot(p.point[1] - q.point[1]);
            let m = 1.0 + p.point[0].hypot(p.point[1]);
            d <= tol * m
        });
        match near {
            Some(q) if p.residual < q.residual => *q = p,
            Some(_) => {}
            None => kept.push(p),
        }
    }
    kept.sort_by(|a, b| {
        a.point
            .partial_cmp(&b.point)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::FloatPoly;

    fn fp(s: &str) -> FloatPoly {
        parse_poly(s)
            .unwrap()
            .map_coeffs(crate::scalar::rational_to_f64)
    }

    #[test]
    fn circle_and_line() {
        let sys = [fp("x^2 + y^2"), fp("x - y")];
        let sols = solve_approx(&sys, [2.0, 0.0], &NewtonOptions::default());
        assert_eq!(sols.len(), 2);
        assert!((sols[0].point[0] + 1.0).abs() < 1e-9);
        assert!((sols[1].point[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn works_in_f32() {
        let sys = [
            parse_poly("x^2 - y")
                .unwrap()
                .map_coeffs(|c| crate::scalar::rational_to_f64(c) as f32),
            parse_poly("x + y")
                .unwrap()
                .map_coeffs(|c| crate::scalar::rational_to_f64(c) as f32),
        ];
        let opts = NewtonOptions {
            residual_tol: 1e-5,
            dedup_tol: 1e-4,
            ..NewtonOptions::default()
        };
        let sols = solve_approx(&sys, [0.0f32, 2.0], &opts);
        assert_eq!(sols.len(), 2);
    }
}
