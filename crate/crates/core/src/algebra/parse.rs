//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | ident | '(' expr ')'
//! ```
//!
//! A leading minus is only accepted at the start of an expression (including
//! right after an opening parenthesis). Juxtaposition is not multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::mpoly::{vars_of, MPoly, Vars};
use super::scalar::Scalar;
use super::AlgebraError;

/// Largest exponent literal accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly, AlgebraError> {
    parse_poly_in(text, &vars_of(vars))
}

pub fn parse_poly_in(text: &str, vars: &Vars) -> Result<MPoly, AlgebraError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    p.skip_ws();
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> AlgebraError {
        AlgebraError::Syntax { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, AlgebraError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly, AlgebraError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax("expected a nonnegative integer exponent"));
        }
        let e = digits
            .parse::<BigInt>()
            .ok()
            .and_then(|v| v.to_u32())
            .filter(|&v| v <= MAX_EXPONENT)
            .ok_or(AlgebraError::ExponentOverflow { position: at })?;
        let degree = base.total_degree().checked_mul(e).filter(|&d| d <= MAX_EXPONENT);
        if degree.is_none() {
            return Err(AlgebraError::ExponentOverflow { position: at });
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MPoly, AlgebraError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("digits");
                let mut value = BigRational::from_integer(n);
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.syntax("expected an integer denominator"));
                    }
                    let d: BigInt = d.parse().expect("digits");
                    if d.is_zero() {
                        return Err(AlgebraError::Syntax { position: at, message: "zero denominator".into() });
                    }
                    value /= BigRational::from_integer(d);
                } else {
                    self.pos = save;
                }
                self.reject_juxtaposition()?;
                Ok(MPoly::constant_in(self.vars, Scalar::from_rational(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| AlgebraError::UnknownVariable { name: name.to_string(), position: start })?;
                self.reject_juxtaposition()?;
                Ok(MPoly::var_in(self.vars, i))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                self.reject_juxtaposition()?;
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    /// Implicit multiplication such as `2x` or `x(y+1)` is an error.
    fn reject_juxtaposition(&self) -> Result<(), AlgebraError> {
        let mut p = self.pos;
        while p < self.src.len() && self.src[p].is_ascii_whitespace() {
            p += 1;
        }
        match self.src.get(p) {
            Some(&c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => Err(AlgebraError::Syntax {
                position: p,
                message: "implicit multiplication is not allowed; use '*'".into(),
            }),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_forms() {
        let p = parse_poly("y - x^2", &["x", "y"]).unwrap();
        assert_eq!(p.coeff(&[0, 1]), Scalar::from_int(1));
        assert_eq!(p.coeff(&[2, 0]), Scalar::from_int(-1));
        assert_eq!(p.num_terms(), 2);

        let h = parse_poly("y^2 + 1*x*y - 1", &["x", "y"]).unwrap();
        assert_eq!(h.coeff(&[0, 2]), Scalar::from_int(1));
        assert_eq!(h.coeff(&[1, 1]), Scalar::from_int(1));
        assert_eq!(h.coeff(&[0, 0]), Scalar::from_int(-1));
        assert_eq!(h.num_terms(), 3);
    }

    #[test]
    fn rationals_and_parentheses() {
        let p = parse_poly("-(x - 1/2)^2 + 3/4*y", &["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "-x^2 + x + 3/4*y - 1/4");
    }

    #[test]
    fn double_plus_is_an_error_at_second_plus() {
        match parse_poly("x^2 + + y", &["x", "y"]) {
            Err(AlgebraError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_implicit_multiplication_and_unknowns() {
        assert!(matches!(parse_poly("2x", &["x"]), Err(AlgebraError::Syntax { position: 1, .. })));
        assert!(matches!(parse_poly("x y", &["x", "y"]), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(
            parse_poly("x + z", &["x", "y"]),
            Err(AlgebraError::UnknownVariable { position: 4, .. })
        ));
        assert!(matches!(parse_poly("x^99999999999", &["x"]), Err(AlgebraError::ExponentOverflow { position: 2 })));
        assert!(matches!(parse_poly("(x^100)^100", &["x"]), Err(AlgebraError::ExponentOverflow { .. })));
    }

    #[test]
    fn primed_variables() {
        let p = parse_poly("x'^2 - y'", &["x", "y", "x'", "y'"]).unwrap();
        assert_eq!(p.to_string(), "x'^2 - y'");
    }
}
