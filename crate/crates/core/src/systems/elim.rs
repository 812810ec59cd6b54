//! Polynomials in `Z[x][y]` and the subresultant remainder sequence in `y`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Var};
use crate::{IntUPoly, Poly, Rational};

/// Coefficients in `y` (ascending), each a dense polynomial in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly {
    coeffs: Vec<IntUPoly>,
}

impl YPoly {
    pub fn new(mut coeffs: Vec<IntUPoly>) -> Self {
        while coeffs.last().is_some_and(IntUPoly::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    /// Integer multiple `scale * f` of a polynomial in `x, y`, together with
    /// the positive `scale` that clears its denominators.
    pub fn from_poly(f: &Poly) -> (YPoly, BigInt) {
        let mut l = BigInt::one();
        for (_, c) in f.terms() {
            l = l.lcm(c.denom());
        }
        let dy = f.degree_in(Var::Y) as usize;
        let dx = f.degree_in(Var::X) as usize;
        let mut rows = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        let lr = Rational::from_integer(l.clone());
        for (m, c) in f.terms() {
            debug_assert_eq!(m.exp(Var::Z), 0);
            let v = (c * &lr).to_integer();
            rows[m.exp(Var::Y) as usize][m.exp(Var::X) as usize] = v;
        }
        (YPoly::new(rows.into_iter().map(IntUPoly::new).collect()), l)
    }

    pub fn to_poly(&self) -> Poly {
        let terms = self.coeffs.iter().enumerate().flat_map(|(j, c)| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(i, v)| {
                    (
                        Monomial([i as u32, j as u32, 0]),
                        Rational::from_integer(v.clone()),
                    )
                })
        });
        Poly::from_terms(terms).with_nvars(2)
    }

    pub fn coeffs(&self) -> &[IntUPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `y`; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient in `y`.
    pub fn lc(&self) -> IntUPoly {
        self.coeffs.last().cloned().unwrap_or_else(IntUPoly::zero)
    }

    /// Gcd of the `x`-coefficients.
    pub fn content(&self) -> IntUPoly {
        let mut g = IntUPoly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.deg() == 0 && !g.is_zero() {
                break;
            }
        }
        g
    }

    fn scale(&self, c: &IntUPoly) -> YPoly {
        YPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn div_exact(&self, c: &IntUPoly) -> YPoly {
        YPoly::new(
            self.coeffs
                .iter()
                .map(|a| a.div_exact(c).expect("subresultant division is exact"))
                .collect(),
        )
    }

    /// Pseudo-remainder in `y`.
    pub fn prem(&self, d: &YPoly) -> YPoly {
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lcd = d.lc();
        let mut r = self.coeffs.clone();
        let mut steps = self.deg() - dd + 1;
        while !r.is_empty() && r.len() > dd {
            let top = r.len() - 1;
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c = &*c * &lcd;
            }
            let off = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] = &r[off + i] - &(&lead * dc);
            }
            r.pop();
            while r.last().is_some_and(IntUPoly::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = YPoly::new(r);
        if steps > 0 {
            out = out.scale(&lcd.pow(steps as u32));
        }
        out
    }

    /// Substitutes a rational for `x`, giving an integer polynomial in `y`
    /// up to a positive factor.
    pub fn at_x(&self, x: &Rational) -> IntUPoly {
        let deg = self.coeffs.iter().map(IntUPoly::deg).max().unwrap_or(0);
        let dpows: Vec<BigInt> = {
            let mut v = Vec::with_capacity(deg + 1);
            let mut p = BigInt::one();
            for _ in 0..=deg {
                v.push(p.clone());
                p *= x.denom();
            }
            v
        };
        let vals = self
            .coeffs
            .iter()
            .map(|c| {
                let mut acc = BigInt::zero();
                for (k, a) in c.coeffs().iter().enumerate().rev() {
                    acc *= x.numer();
                    acc += a * &dpows[deg - k];
                }
                acc
            })
            .collect();
        IntUPoly::new(vals)
    }
}

/// Output of the subresultant remainder sequence.
#[derive(Clone, Debug)]
pub struct Prs {
    /// `Res_y(f, g)` with the Sylvester convention (rows of `f` first).
    pub resultant: IntUPoly,
    /// A member `t1(x) y + t0(x)` of the ideal `(f, g)` found in the
    /// sequence, if any.
    pub linear: Option<(IntUPoly, IntUPoly)>,
}

/// Subresultant PRS (Collins/Brown) in `y` over `Z[x]`. Needs at least one
/// input of positive degree in `y`.
pub fn subresultant_prs(f: &YPoly, g: &YPoly) -> Prs {
    let as_linear = |p: &YPoly| (p.deg() == 1).then(|| (p.coeffs[1].clone(), p.coeffs[0].clone()));
    let mut linear = as_linear(f).or_else(|| as_linear(g));
    if f.is_zero() || g.is_zero() {
        return Prs {
            resultant: IntUPoly::zero(),
            linear,
        };
    }
    if f.deg() == 0 {
        return Prs {
            resultant: f.lc().pow(g.deg() as u32),
            linear,
        };
    }
    if g.deg() == 0 {
        return Prs {
            resultant: g.lc().pow(f.deg() as u32),
            linear,
        };
    }
    let mut sign_neg = false;
    let (mut a, mut b) = (f.clone(), g.clone());
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign_neg = true;
        }
    }
    let mut gg = IntUPoly::one();
    let mut h = IntUPoly::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return Prs {
                resultant: IntUPoly::zero(),
                linear,
            };
        }
        a = b;
        let denom = &gg * &h.pow(delta as u32);
        b = r.div_exact(&denom);
        gg = a.lc();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant h update is exact")
        };
        if b.deg() == 1 && linear.is_none() {
            linear = as_linear(&b);
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let lb = b.lc();
    let res = if da == 1 {
        lb
    } else {
        lb.pow(da)
            .div_exact(&h.pow(da - 1))
            .expect("final subresultant step is exact")
    };
    Prs {
        resultant: if sign_neg { -&res } else { res },
        linear,
    }
}

/// Sylvester matrix in `y` (rows of `f` first), entries in `Z[x]`.
pub fn sylvester_matrix(f: &YPoly, g: &YPoly) -> Vec<Vec<IntUPoly>> {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, shifts, deg) in [(f, n, m), (g, m, n)] {
        for i in 0..shifts {
            let mut row = vec![IntUPoly::zero(); size];
            for k in 0..=deg {
                // Highest power first, as in the usual layout.
                row[i + k] = p.coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free (Bareiss) determinant over `Z[x]`.
pub fn bareiss_det(mut m: Vec<Vec<IntUPoly>>) -> IntUPoly {
    let n = m.len();
    if n == 0 {
        return IntUPoly::one();
    }
    let mut negate = false;
    let mut prev = IntUPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return IntUPoly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Integer polynomial in `x` as an exact rational polynomial in `var`.
pub fn upoly_to_poly(u: &IntUPoly, var: Var) -> Poly {
    Poly::from_univariate(&u.to_rational(), var)
}
