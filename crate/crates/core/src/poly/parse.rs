//! Text syntax: integer or rational literals, named variables, `+ - * ^`,
//! parentheses. Multiplication is always explicit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::Scalar;

use super::mpoly::MPoly;

/// Parses a polynomial over the given variable names.
pub fn parse_poly(text: &str, names: &[&str]) -> Result<MPoly> {
    parse_poly_at(text, names, 1, 1)
}

/// As [`parse_poly`], reporting errors relative to `line` and the column
/// where `text` starts.
pub fn parse_poly_at(text: &str, names: &[&str], line: usize, col0: usize) -> Result<MPoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, names, line, col0 };
    let e = p.expr()?;
    p.ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
    line: usize,
    col0: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { line: self.line, column: self.col0 + self.pos, message: message.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= BigRational::from_integer(den);
                }
                self.no_juxtaposition()?;
                Ok(MPoly::constant(self.nvars(), Scalar::rational(q)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => {
                        self.no_juxtaposition()?;
                        Ok(MPoly::var(self.nvars(), i))
                    }
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn no_juxtaposition(&mut self) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'(' => Err(self.err("implicit multiplication is not allowed")),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XYZ: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn round_trip() {
        for s in ["3/2*x^2*y - z^3", "x^3*y + x*z^3 + y^3*z", "-x - 4", "x^4 - x*y*z^2 + y^4"] {
            assert_eq!(parse_poly(s, &XYZ).unwrap().to_string(), s);
        }
        let p = parse_poly("(x + y)^2 - 2 * x*y", &XYZ).unwrap();
        assert_eq!(p.to_string(), "x^2 + y^2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_poly("2x", &XYZ), Err(Error::Parse { column: 2, .. })));
        assert!(parse_poly("x + w", &XYZ).is_err());
        assert!(parse_poly("x +", &XYZ).is_err());
        assert!(parse_poly("(x + y", &XYZ).is_err());
        assert!(parse_poly("1/0", &XYZ).is_err());
    }
}
