//! Parser for the polynomial string form, e.g. `3/2*T^2*a1 - 1`.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | 'T' | 'a' uint | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{parse_var_name, MultiPoly};
use super::rational::Q;
use super::ExactError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at offset {}", self.pos))
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

    fn uint(&mut self) -> Result<BigInt, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ExactError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ExactError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ExactError> {
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
                let n = self.uint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(MultiPoly::constant(Q::new(n, d)));
                }
                Ok(MultiPoly::constant(Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                parse_var_name(name)
                    .map(MultiPoly::var)
                    .ok_or_else(|| ExactError::Parse(format!("unknown variable '{name}'")))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<MultiPoly, ExactError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        for s in ["3/2*T^2*a1 - 1", "0", "T", "-T^2 + 3*T - 2", "T*a1 + 1/2*a2"] {
            assert_eq!(parse_poly(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parses_non_canonical() {
        assert_eq!(parse_poly("(T-1)*(T-2)").unwrap().to_string(), "T^2 - 3*T + 2");
        assert_eq!(parse_poly("a1 - a1").unwrap().to_string(), "0");
        assert!(parse_poly("x + 1").is_err());
        assert!(parse_poly("T +").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
