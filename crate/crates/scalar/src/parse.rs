//! Parser for the canonical text form.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom  := integer | symbol | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::ratfunc::RatFunc;
use crate::symbol::Symbol;
use crate::{Rational, ScalarError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_scalar(s: &str) -> Result<RatFunc, ScalarError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parse an exact rational such as `-3/4` or `7`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    let bad = || ScalarError::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl Parser<'_> {
    fn err(&self, what: &str) -> ScalarError {
        ScalarError::Parse(format!("{what} at byte {}", self.pos))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ScalarError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ScalarError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.integer()?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let k: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        base.pow(if neg { -k } else { k })
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(RatFunc::from_rational(Rational::from_integer(self.integer()?)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Symbol::from_name(name)
                    .map(RatFunc::var)
                    .ok_or_else(|| ScalarError::Parse(format!("unknown symbol {name:?}")))
            }
            _ => Err(self.err("expected operand")),
        }
    }
}
