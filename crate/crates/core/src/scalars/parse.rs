//! Recursive-descent parser for the text literal language shared by all
//! file formats and reports.
//!
//! Grammar (whitespace insignificant):
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := ('-')? factor ('*' factor)*
//! factor := '(' expr ')' | rational | zeta | var   [ '^' int ]
//! zeta   := 'z' digits            -- root of unity with inline conductor, e.g. z5^2
//! var    := ident not of zeta shape, e.g. x, s_1_2
//! ```

use num::BigInt;

use super::{LaurentPoly, Monomial, Rational, Scalar};
use crate::error::Error;
use crate::Result;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse { literal: self.src.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            got => Err(self.err(format!("expected `{}`, found {:?}", c as char, got.map(|b| b as char)))),
        }
    }

    fn parse_uint(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let digits = self.parse_uint()?;
        let v: i64 = digits.parse().map_err(|_| self.err("integer too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn parse_exponent(&mut self) -> Result<i64> {
        if self.peek() == Some(b'^') {
            self.bump();
            self.parse_int()
        } else {
            Ok(1)
        }
    }

    fn parse_factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                let e = self.parse_exponent()?;
                inner.pow(e).map_err(|_| self.err("cannot raise a non-unit to a negative power"))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                let mut value = Rational::from_integer(num.parse::<BigInt>().unwrap());
                if self.peek() == Some(b'/') {
                    self.bump();
                    let den = self.parse_uint()?;
                    let d: BigInt = den.parse().unwrap();
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                let p = LaurentPoly::constant(Scalar::Rational(value));
                let e = self.parse_exponent()?;
                p.pow(e).map_err(|_| self.err("cannot invert zero"))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                self.skip_ws();
                let ident = self.parse_ident();
                if ident.is_empty() {
                    return Err(self.err("expected identifier"));
                }
                // `z<digits>` is a root of unity with inline conductor
                if let Some(rest) = ident.strip_prefix('z') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let m: u32 = rest.parse().map_err(|_| self.err("conductor too large"))?;
                        if m == 0 {
                            return Err(self.err("conductor must be positive"));
                        }
                        let e = self.parse_exponent()?;
                        return Ok(LaurentPoly::constant(Scalar::root_of_unity(m, e)));
                    }
                }
                let e = self.parse_exponent()?;
                Ok(LaurentPoly::term(Scalar::one(), Monomial::var(&ident, e)))
            }
            got => Err(self.err(format!("unexpected token {:?}", got.map(|b| b as char)))),
        }
    }

    fn parse_term(&mut self) -> Result<LaurentPoly> {
        let neg = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(if neg { acc.neg() } else { acc })
    }

    fn parse_expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parse a Laurent-polynomial literal such as `1/2*x^-1 + z3*y - 2`.
pub fn parse_laurent(src: &str) -> Result<LaurentPoly> {
    let mut p = Parser::new(src);
    let out = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err(format!("trailing input at byte {}", p.pos)));
    }
    Ok(out)
}

/// Parse a scalar literal (a constant Laurent expression).
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let p = parse_laurent(src)?;
    p.as_constant().ok_or_else(|| Error::Parse {
        literal: src.to_string(),
        reason: "expected a constant scalar, found free variables".into(),
    })
}

/// Parse a rational literal `p/q`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let s = parse_scalar(src)?;
    s.as_rational().ok_or_else(|| Error::Parse {
        literal: src.to_string(),
        reason: "expected a rational value".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_scalar("5/6").unwrap(), Scalar::ratio(5, 6));
        assert_eq!(parse_scalar("-3/4").unwrap(), Scalar::ratio(-3, 4));
        assert_eq!(parse_scalar("7").unwrap(), Scalar::from_i64(7));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn parses_roots_of_unity() {
        assert_eq!(parse_scalar("z3^1").unwrap(), Scalar::root_of_unity(3, 1));
        assert_eq!(parse_scalar("z5^-1").unwrap(), Scalar::root_of_unity(5, 4));
        assert_eq!(parse_scalar("1 + z3 + z3^2").unwrap(), Scalar::zero());
        assert_eq!(parse_scalar("z2").unwrap(), Scalar::from_i64(-1));
    }

    #[test]
    fn parses_laurent_terms() {
        let p = parse_laurent("2*x^2*y^-1 - 1/3").unwrap();
        assert_eq!(p.num_terms(), 2);
        let q = parse_laurent("x + x^-1").unwrap();
        assert_eq!(q.vars().len(), 1);
        // z followed by letters is a variable, z followed by digits a root
        let v = parse_laurent("zeta + z_3").unwrap();
        assert_eq!(v.vars().len(), 2);
    }

    #[test]
    fn parenthesized_coefficients() {
        let p = parse_laurent("(1 + z4)*x^2").unwrap();
        assert_eq!(p.num_terms(), 1);
        let display = format!("{p}");
        assert_eq!(parse_laurent(&display).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_laurent("").is_err());
        assert!(parse_laurent("1 +").is_err());
        assert!(parse_laurent("x^").is_err());
        assert!(parse_laurent("(x").is_err());
        assert!(parse_scalar("x + 1").is_err());
    }

    #[test]
    fn scalar_display_roundtrip() {
        let samples = [
            Scalar::ratio(-7, 3),
            Scalar::root_of_unity(8, 3),
            Scalar::root_of_unity(5, 1).add(&Scalar::ratio(1, 2)),
            Scalar::root_of_unity(12, 7).mul(&Scalar::from_i64(-2)),
            Scalar::zero(),
        ];
        for s in samples {
            let text = format!("{s}");
            assert_eq!(parse_scalar(&text).unwrap(), s, "roundtrip failed for {text}");
        }
    }
}
