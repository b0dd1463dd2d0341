//! Text form of polynomials: `-32*x^3*y + 6*x^3 - 9*x^2 + 3*x`.
//!
//! Terms are written in descending graded-lex order. A unit coefficient is
//! omitted except on the constant term, rationals print as `a/b`, and the zero
//! polynomial prints as `0`.

use super::{Coefficient, Exponent, Poly, PolyError, Rational, Var};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at byte {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("zero denominator at byte {0}")]
    ZeroDenominator(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent, arity: usize) -> fmt::Result {
    let mut first = true;
    for var in Var::ALL.iter().take(arity) {
        let k = e.of(*var);
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{}", var.symbol())?;
        } else {
            write!(f, "{}^{}", var.symbol(), k)?;
        }
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let constant = *e == Exponent::ONE;
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e, self.arity)?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let found = match self.src.get(self.pos) {
            Some(b) => format!("'{}'", *b as char),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected {
            pos: self.pos,
            found,
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let d = self.digits()?;
        Ok(d.parse().expect("nonempty digit run"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| ParseError::Unexpected {
            pos: at,
            found: d.to_string(),
        })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.integer()?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator(at));
            }
            d
        } else {
            BigInt::one()
        };
        Ok(Rational::new(num, den))
    }

    // expr := ['-'] product (('+' | '-') product)*
    fn expr(&mut self, arity: usize) -> Result<Poly<Rational>, ParseError> {
        let mut acc = Poly::zero(arity)?;
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                _ => return Ok(acc),
            };
            let t = self.product(arity)?;
            acc = if negative { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            first = false;
        }
    }

    // product := power (['*'] power)*, juxtaposition meaning multiplication
    fn product(&mut self, arity: usize) -> Result<Poly<Rational>, ParseError> {
        let mut acc = self.power(arity)?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'(' | b'x' | b'y' | b'z') => {}
                Some(b) if b.is_ascii_digit() => {}
                _ => return Ok(acc),
            }
            let f = self.power(arity)?;
            acc = acc.try_mul(&f)?;
        }
    }

    // power := atom ['^' digits]
    fn power(&mut self, arity: usize) -> Result<Poly<Rational>, ParseError> {
        let base = self.atom(arity)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.exponent()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    // atom := rational | variable | '(' expr ')'
    fn atom(&mut self, arity: usize) -> Result<Poly<Rational>, ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => Ok(Poly::constant(self.rational()?, arity)?),
            Some(b @ (b'x' | b'y' | b'z')) => {
                let var = match b {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    _ => Var::Z,
                };
                if var.index() >= arity {
                    return Err(PolyError::VariableOutOfRange { var, arity }.into());
                }
                self.pos += 1;
                Ok(Poly::var(var, arity)?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(arity)?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

impl Poly<Rational> {
    /// Parses the text form produced by `Display`.
    ///
    /// Also accepts general expressions: parentheses, integer powers, a
    /// leading minus, and multiplication written as `*` or by juxtaposition
    /// (`2x(x - 1)^2`). A literal `a/b` is a single rational.
    pub fn parse(s: &str, arity: usize) -> Result<Self, ParseError> {
        let mut cur = Cursor {
            src: s.as_bytes(),
            pos: 0,
        };
        let p = cur.expr(arity)?;
        if cur.peek().is_some() {
            return Err(cur.unexpected());
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, rat};

    #[test]
    fn formats_in_descending_graded_lex() {
        let p = Poly::from_terms(
            2,
            [
                (int(3), [1, 0, 0]),
                (int(-32), [3, 1, 0]),
                (int(6), [3, 0, 0]),
                (int(-1), [0, 0, 0]),
                (rat(1, 2), [0, 2, 0]),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "-32*x^3*y + 6*x^3 + 1/2*y^2 + 3*x - 1");
    }

    #[test]
    fn zero_and_units() {
        assert_eq!(Poly::<Rational>::zero(2).unwrap().to_string(), "0");
        let p = Poly::from_terms(3, [(int(-1), [1, 1, 1]), (int(1), [0, 0, 0])]).unwrap();
        assert_eq!(p.to_string(), "-x*y*z + 1");
    }

    #[test]
    fn parse_roundtrip_and_loose_input() {
        let s = "-32*x^3*y + 6*x^3 + 1/2*y^2 + 3*x - 1";
        let p = Poly::parse(s, 2).unwrap();
        assert_eq!(p.to_string(), s);
        let q = Poly::parse("  x*x + 2 * y - y*3/2 ", 2).unwrap();
        assert_eq!(q.to_string(), "x^2 + 1/2*y");
        assert_eq!(Poly::parse("0", 3).unwrap(), Poly::zero(3).unwrap());
    }

    #[test]
    fn parse_expressions() {
        let p = Poly::parse("-y(2y-1)(16x^2 + x(16y-17) - 3y + 3)", 2).unwrap();
        let q = Poly::parse(
            "-32*x^2*y^2 - 32*x*y^3 + 16*x^2*y + 50*x*y^2 + 6*y^3 - 17*x*y - 9*y^2 + 3*y",
            2,
        )
        .unwrap();
        assert_eq!(p, q);
        assert_eq!(
            Poly::parse("(x+y+z)^2 - 2(x y + x z + y z)", 3).unwrap(),
            Poly::parse("x^2 + y^2 + z^2", 3).unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Poly::parse("x + z", 2),
            Err(ParseError::Poly(PolyError::VariableOutOfRange { .. }))
        ));
        assert!(matches!(Poly::parse("x +", 2), Err(ParseError::Unexpected { .. })));
        assert!(matches!(Poly::parse("1/0", 2), Err(ParseError::ZeroDenominator(_))));
        assert!(matches!(Poly::parse("", 2), Err(ParseError::Unexpected { .. })));
        assert!(matches!(Poly::parse("x )", 2), Err(ParseError::Unexpected { .. })));
        assert!(matches!(Poly::parse("(x + y", 2), Err(ParseError::Unexpected { .. })));
    }
}
