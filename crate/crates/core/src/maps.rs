//! Named polynomial maps of the plane and their compositions.

use std::fmt;

use thiserror::Error;

use crate::poly::{det, jacobian_matrix, PolyError, Var};
use crate::{rat, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("unknown map '{0}' (known: F, phi, psi, Ftilde, f, ftilde)")]
    UnknownName(String),
    #[error("a map needs 2 or 3 components, got {0}")]
    ComponentCount(usize),
    #[error("component uses more variables than the {0}-variable domain")]
    ComponentArity(usize),
    #[error("composition needs {expected} inner components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Stable names of the built-in maps.
pub const BUILTIN_NAMES: [&str; 6] = ["F", "phi", "psi", "Ftilde", "f", "ftilde"];

/// An ordered tuple of polynomials over a common domain `x, y[, z]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    name: String,
    components: Vec<Poly>,
    domain_vars: usize,
}

impl PolyMap {
    pub fn new(
        name: impl Into<String>,
        components: Vec<Poly>,
        domain_vars: usize,
    ) -> Result<Self, MapError> {
        if !(2..=3).contains(&components.len()) {
            return Err(MapError::ComponentCount(components.len()));
        }
        if !(1..=3).contains(&domain_vars) {
            return Err(MapError::ComponentArity(domain_vars));
        }
        if components.iter().any(|c| c.used_vars() > domain_vars) {
            return Err(MapError::ComponentArity(domain_vars));
        }
        let components = components
            .into_iter()
            .map(|c| c.with_nvars(domain_vars))
            .collect();
        Ok(PolyMap {
            name: name.into(),
            components,
            domain_vars,
        })
    }

    /// The plane map `(c1, c2)` over `x, y`.
    pub fn planar(name: impl Into<String>, c1: Poly, c2: Poly) -> Result<Self, MapError> {
        Self::new(name, vec![c1, c2], 2)
    }

    /// `(x, y)` or `(x, y, z)`.
    pub fn identity(n: usize) -> Self {
        let comps = (0..n).map(|i| Poly::var(Var::ALL[i])).collect();
        Self::new("id", comps, n).expect("identity has 2 or 3 components")
    }

    /// Translation `(x + a, y + b)` of the plane.
    pub fn translation(a: Rational, b: Rational) -> Self {
        let c1 = &Poly::var(Var::X) + &Poly::constant(a);
        let c2 = &Poly::var(Var::Y) + &Poly::constant(b);
        Self::planar("shift", c1, c2).expect("two components")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn domain_vars(&self) -> usize {
        self.domain_vars
    }

    pub fn is_planar(&self) -> bool {
        self.components.len() == 2 && self.domain_vars == 2
    }

    /// Largest total degree among the components.
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>, MapError> {
        self.components
            .iter()
            .map(|c| c.eval(point).map_err(MapError::from))
            .collect()
    }

    /// Matrix of partial derivatives; row `i` is the gradient of component `i`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        jacobian_matrix(&self.components, self.domain_vars)
    }

    /// Determinant of [`jacobian`](Self::jacobian); needs a square map.
    pub fn jacobian_det(&self) -> Result<Poly, MapError> {
        Ok(det(&self.jacobian())?)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = (", self.name)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `outer ∘ inner`, expanded.
pub fn compose_maps(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap, MapError> {
    if inner.components.len() != outer.domain_vars {
        return Err(MapError::Arity {
            expected: outer.domain_vars,
            got: inner.components.len(),
        });
    }
    let comps = outer
        .components
        .iter()
        .map(|c| c.compose(&inner.components))
        .collect::<Result<Vec<_>, _>>()?;
    PolyMap::new(
        format!("{}∘{}", outer.name, inner.name),
        comps,
        inner.domain_vars,
    )
}

/// Real and imaginary parts of `c(x + iy)` for a univariate `c` with
/// rational coefficients.
pub fn realize_complex(cpoly: &Poly) -> Result<PolyMap, MapError> {
    let var = Var::ALL
        .into_iter()
        .find(|&v| cpoly.degree_in(v) > 0)
        .unwrap_or(Var::Z);
    let u = cpoly.to_univariate(var).ok_or(MapError::NotUnivariate)?;
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    // Horner in the complex numbers: acc <- acc * (x + iy) + c.
    let mut re = Poly::zero();
    let mut im = Poly::zero();
    for c in u.coeffs().iter().rev() {
        let nre = &(&re * &x) - &(&im * &y);
        let nim = &(&re * &y) + &(&im * &x);
        re = &nre + &Poly::constant(c.clone());
        im = nim;
    }
    PolyMap::planar(format!("realize({cpoly})"), re, im)
}

/// First component of the BF-Pinchuk map.
pub fn bf_p() -> Poly {
    poly("4*x^6*y^3 + 12*x^5*y^2 + 12*x^4*y + 4*x^3*y^2 + 4*x^3 + 5*x^2*y + x + y")
}

/// Second component of the BF-Pinchuk map.
pub fn bf_q() -> Poly {
    let a = poly("4*x^4*y^2 + 8*x^3*y + 4*x^2 + 2*x*y + 1");
    let b = poly("4*x^6*y^3 + 12*x^5*y^2 + 12*x^4*y + 4*x^3*y^2 + 4*x^3 + 7*x^2*y + 3*x + y");
    -(&a * &b)
}

/// The two parts of the sum-of-squares form of `det(Dψ)`.
/// The two-part decomposition of `det(D psi)` as it is usually quoted,
/// `(2y + 2xy^2 + x)^2 + x^2 (2y^2 + 3)^2`. It does not expand to
/// `det(D psi)`; the second square should be `x^2 (2y^2 + 3)` unsquared.
/// Kept so the mismatch can be reported.
pub fn psi_sos_parts() -> Vec<Poly> {
    vec![
        poly("2*y + 2*x*y^2 + x").with_nvars(2),
        poly("x*(2*y^2 + 3)").with_nvars(2),
    ]
}

/// A decomposition that does expand to `det(D psi)`:
/// `(2y + 2xy^2 + x)^2 + 2(xy)^2 + 3x^2`, written with unit weights.
pub fn psi_sos_parts_verified() -> Vec<Poly> {
    vec![
        poly("2*y + 2*x*y^2 + x").with_nvars(2),
        poly("x*y").with_nvars(2),
        poly("x*y").with_nvars(2),
        poly("x").with_nvars(2),
        poly("x").with_nvars(2),
        poly("x").with_nvars(2),
    ]
}

fn poly(s: &str) -> Poly {
    crate::parser::parse_poly(s).expect("built-in polynomial literal")
}

/// Constructs a built-in map by name.
pub fn builtin(name: &str) -> Result<PolyMap, MapError> {
    match name {
        "F" => PolyMap::planar("F", bf_p(), bf_q()),
        "phi" => Ok(realize_complex(&poly("z^3 - 3*z"))?.renamed("phi")),
        "psi" => PolyMap::planar(
            "psi",
            poly("(x*y^2 + x + y)*(x - y)"),
            poly("(x*y + 1)^2 + x^2"),
        ),
        "Ftilde" => PolyMap::planar("Ftilde", &bf_p() + &Poly::constant(rat(1)), bf_q()),
        "f" => Ok(compose_maps(&builtin("phi")?, &builtin("F")?)?.renamed("f")),
        "ftilde" => Ok(compose_maps(&builtin("psi")?, &builtin("Ftilde")?)?.renamed("ftilde")),
        other => Err(MapError::UnknownName(other.to_string())),
    }
}

/// All built-in maps, expanded once.
#[derive(Clone, Debug)]
pub struct Registry {
    maps: Vec<PolyMap>,
}

impl Registry {
    pub fn new() -> Self {
        let maps = BUILTIN_NAMES
            .iter()
            .map(|n| builtin(n).expect("built-in maps construct"))
            .collect();
        Registry { maps }
    }

    pub fn get(&self, name: &str) -> Result<&PolyMap, MapError> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| MapError::UnknownName(name.to_string()))
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn pt(a: i64, b: i64) -> Vec<Rational> {
        vec![rat(a), rat(b)]
    }

    #[test]
    fn f_y_degrees() {
        let m = builtin("F").unwrap();
        assert_eq!(m.component(0).degree_in(Var::Y), 3);
        assert_eq!(m.component(1).degree_in(Var::Y), 5);
    }

    #[test]
    fn phi_values() {
        let phi = builtin("phi").unwrap();
        assert_eq!(
            phi.component(0),
            &parse_poly("x^3 - 3*x*y^2 - 3*x").unwrap()
        );
        assert_eq!(
            phi.component(1),
            &parse_poly("3*x^2*y - y^3 - 3*y").unwrap()
        );
        assert_eq!(phi.eval(&pt(0, 1)).unwrap(), pt(0, -4));
        assert_eq!(phi.eval(&pt(2, 0)).unwrap(), pt(2, 0));
        assert_eq!(phi.eval(&pt(1, 0)).unwrap(), pt(-2, 0));
    }

    #[test]
    fn realize_examples() {
        let sq = realize_complex(&parse_poly("z^2").unwrap()).unwrap();
        assert_eq!(sq.component(0), &parse_poly("x^2 - y^2").unwrap());
        assert_eq!(sq.component(1), &parse_poly("2*x*y").unwrap());
        let c = realize_complex(&Poly::constant(rat(5))).unwrap();
        assert_eq!(c.component(0), &Poly::constant(rat(5)));
        assert!(c.component(1).is_zero());
        assert!(realize_complex(&parse_poly("x*y").unwrap()).is_err());
    }

    #[test]
    fn composition_values() {
        let f = builtin("f").unwrap();
        assert_eq!(f.eval(&pt(0, 0)).unwrap(), pt(0, 0));
        let ft = builtin("ftilde").unwrap();
        assert_eq!(ft.eval(&pt(0, 0)).unwrap(), pt(1, 2));
        let fm = builtin("F").unwrap();
        let same = compose_maps(&PolyMap::identity(2), &fm).unwrap();
        assert_eq!(same.components(), fm.components());
        assert!(compose_maps(&PolyMap::identity(3), &fm).is_err());
    }

    #[test]
    fn phi_jacobian_is_derivative_modulus() {
        let phi = builtin("phi").unwrap();
        let expected = parse_poly("(3*x^2 - 3*y^2 - 3)^2 + (6*x*y)^2").unwrap();
        assert_eq!(phi.jacobian_det().unwrap(), expected);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("G"), Err(MapError::UnknownName(_))));
    }

    #[test]
    fn registry_lookup() {
        let r = Registry::new();
        assert_eq!(r.get("f").unwrap().degree(), 45);
        assert!(r.get("nope").is_err());
    }
}
