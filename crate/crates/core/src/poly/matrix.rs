use super::{PolyError, Polynomial, Var};
use crate::scalar::Scalar;

/// Row `i` is the gradient of `components[i]` over the first `nvars`
/// variables.
pub fn jacobian_matrix<C: Scalar>(
    components: &[Polynomial<C>],
    nvars: usize,
) -> Vec<Vec<Polynomial<C>>> {
    components
        .iter()
        .map(|f| {
            (0..nvars)
                .map(|j| f.partial(Var::ALL[j]).with_nvars(nvars))
                .collect()
        })
        .collect()
}

/// Exact determinant of a 2x2 or 3x3 polynomial matrix by cofactor expansion.
/// A 1x1 matrix is accepted as a degenerate case.
pub fn det<C: Scalar>(m: &[Vec<Polynomial<C>>]) -> Result<Polynomial<C>, PolyError> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(PolyError::NonSquare {
            rows: n,
            cols: row.len(),
        });
    }
    match n {
        1 => Ok(m[0][0].clone()),
        2 => Ok(&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])),
        3 => {
            let minor = |a: usize, b: usize| -> Polynomial<C> {
                &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a])
            };
            let mut acc = Polynomial::zero();
            for (j, (a, b)) in [(1, 2), (0, 2), (0, 1)].into_iter().enumerate() {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = &m[0][j] * &minor(a, b);
                acc = if j == 1 { &acc - &t } else { &acc + &t };
            }
            Ok(acc)
        }
        _ => Err(PolyError::UnsupportedSize(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use crate::{rat, Poly};

    #[test]
    fn rejects_non_square() {
        let m = vec![vec![Poly::one(), Poly::one()], vec![Poly::one()]];
        assert!(matches!(det(&m), Err(PolyError::NonSquare { .. })));
    }

    #[test]
    fn identity_jacobian() {
        let comps = [parse_poly("x").unwrap(), parse_poly("y").unwrap()];
        let j = jacobian_matrix(&comps, 2);
        assert_eq!(j[0][0], Poly::one());
        assert!(j[0][1].is_zero());
        assert_eq!(det(&j).unwrap(), Poly::one());
    }

    #[test]
    fn three_by_three_scaling() {
        let comps = [
            parse_poly("x").unwrap(),
            parse_poly("y").unwrap(),
            parse_poly("2*z").unwrap(),
        ];
        let j = jacobian_matrix(&comps, 3);
        assert_eq!(det(&j).unwrap(), Poly::constant(rat(2)));
    }
}
