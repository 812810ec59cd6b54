//! Text grammar for polynomials, rationals and points.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') ['-'] term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | 'x' | 'y' | 'z' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is ignored between tokens. Implicit multiplication and
//! floating literals are rejected. [`print_canonical`] emits the canonical
//! form, which this grammar reads back to the same polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{Monomial, Var};
use crate::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    NonNaturalExponent,
    UnknownVariable,
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind:?} at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, position: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            position: position.min(self.src.len()),
            kind,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(
                self.pos,
                ParseErrorKind::SyntaxError,
                format!("unexpected '{}'", c as char),
            )),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn natural(&mut self) -> Result<BigInt, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        self.digits()
            .ok_or_else(|| self.err(at, ParseErrorKind::SyntaxError, "expected an integer"))
    }

    /// `integer ('/' positive-integer)?`, unsigned.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let n = self.natural()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let d = self.natural()?;
            if d.is_zero() {
                return Err(self.err(at, ParseErrorKind::ZeroDenominator, "zero denominator"));
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let r = self.rational()?;
        self.check_no_float()?;
        Ok(if neg { -r } else { r })
    }

    fn check_no_float(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(b'.') {
            return Err(self.err(
                self.pos,
                ParseErrorKind::SyntaxError,
                "floating literals are not allowed",
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'-') {
            Ok(-self.term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        // Anything that could start a factor here means a missing '*'.
        if let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'(' {
                return Err(self.err(
                    self.pos,
                    ParseErrorKind::SyntaxError,
                    "implicit multiplication is not allowed; use '*'",
                ));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            _ => {
                return Err(self.err(
                    at,
                    ParseErrorKind::NonNaturalExponent,
                    "exponent must be a natural number",
                ))
            }
        }
        let e = self.natural()?;
        if matches!(self.peek(), Some(b'/') | Some(b'.')) {
            return Err(self.err(
                at,
                ParseErrorKind::NonNaturalExponent,
                "exponent must be a natural number",
            ));
        }
        let e: u32 = u32::try_from(&e)
            .map_err(|_| self.err(at, ParseErrorKind::SyntaxError, "exponent too large"))?;
        if self.peek() == Some(b'^') {
            return Err(self.err(
                self.pos,
                ParseErrorKind::SyntaxError,
                "chained exponents need parentheses",
            ));
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err(self.pos, ParseErrorKind::SyntaxError, "expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                self.check_no_float()?;
                Ok(Poly::constant(r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    b'z' => Var::Z,
                    _ => {
                        return Err(self.err(
                            at,
                            ParseErrorKind::UnknownVariable,
                            format!("unknown variable '{}'", c as char),
                        ))
                    }
                };
                self.pos += 1;
                if let Some(n) = self.src.get(self.pos) {
                    if n.is_ascii_alphanumeric() {
                        return Err(self.err(
                            self.pos,
                            ParseErrorKind::SyntaxError,
                            "implicit multiplication is not allowed; use '*'",
                        ));
                    }
                }
                Ok(Poly::var(v))
            }
            Some(c) => Err(self.err(
                at,
                ParseErrorKind::SyntaxError,
                format!("unexpected '{}'", c as char),
            )),
            None => Err(self.err(at, ParseErrorKind::SyntaxError, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial in `x, y, z`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text);
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses a signed rational such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut p = Parser::new(text);
    let r = p.signed_rational()?;
    p.finish()?;
    Ok(r)
}

/// Parses a comma-separated list of rationals such as `1/2,-3`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, ParseError> {
    let mut p = Parser::new(text);
    let mut out = vec![p.signed_rational()?];
    while p.eat(b',') {
        out.push(p.signed_rational()?);
    }
    p.finish()?;
    Ok(out)
}

/// Canonical text: graded-lex descending terms joined by `" + "`/`" - "`.
pub fn print_canonical(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in f.terms().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = monomial_text(m);
        if mono.is_empty() {
            out.push_str(&rational_text(&a));
        } else {
            if !a.is_one() {
                out.push_str(&rational_text(&a));
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{e}", v.name())),
        }
    }
    parts.join("*")
}

/// `"n"` or `"n/d"` in lowest terms.
pub fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn three_terms() {
        let f = parse_poly("4*x^6*y^3 + x + y").unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn psi_second_component_expands() {
        let f = parse_poly("(x*y+1)^2 + x^2").unwrap();
        let g = parse_poly("x^2*y^2 + 2*x*y + x^2 + 1").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let e = parse_poly("2x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::SyntaxError);
        assert_eq!(e.position, 1);
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("2(x+1)").is_err());
    }

    #[test]
    fn exponent_errors() {
        assert_eq!(
            parse_poly("x^-1").unwrap_err().kind,
            ParseErrorKind::NonNaturalExponent
        );
        assert_eq!(
            parse_poly("x^(1/2)").unwrap_err().kind,
            ParseErrorKind::NonNaturalExponent
        );
        assert_eq!(
            parse_poly("x^1/2").unwrap_err().kind,
            ParseErrorKind::NonNaturalExponent
        );
    }

    #[test]
    fn unknown_variable() {
        let e = parse_poly("x + w").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable);
        assert_eq!(e.position, 4);
    }

    #[test]
    fn floats_rejected() {
        assert!(parse_poly("1.5*x").is_err());
    }

    #[test]
    fn unary_minus_covers_leading_term() {
        assert_eq!(parse_poly("-x^2").unwrap(), parse_poly("0 - x^2").unwrap());
        assert_eq!(
            parse_poly("-2*x*y").unwrap().coeff(&Monomial([1, 1, 0])),
            rat(-2)
        );
    }

    #[test]
    fn rationals_and_points() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_point("1,0").unwrap(), vec![rat(1), rat(0)]);
        assert_eq!(
            parse_point(" 1/2 , -3 ").unwrap(),
            vec![ratio(1, 2), rat(-3)]
        );
        assert_eq!(
            parse_rational("1/0").unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert!(parse_point("1,").is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(print_canonical(&Poly::zero()), "0");
        assert_eq!(
            print_canonical(&parse_poly("x^2-y^2").unwrap()),
            "x^2 - y^2"
        );
        assert_eq!(
            print_canonical(&parse_poly("-1/2*x*z^3 + 3").unwrap()),
            "-1/2*x*z^3 + 3"
        );
        let p = crate::maps::bf_p();
        assert!(print_canonical(&p).starts_with("4*x^6*y^3 + 12*x^5*y^2 + 12*x^4*y"));
    }

    #[test]
    fn bf_polynomial_round_trips() {
        let p = crate::maps::bf_p();
        assert_eq!(parse_poly(&print_canonical(&p)).unwrap(), p);
        let q = crate::maps::bf_q();
        assert_eq!(parse_poly(&print_canonical(&q)).unwrap(), q);
    }
}
