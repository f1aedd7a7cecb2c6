//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := '-'? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := var | rational | '(' expr ')'
//! ```
//!
//! Variables are identifiers over the declared ambient; implicit
//! multiplication is rejected. Errors carry the byte position.

use super::{Polynomial, Rational};
use crate::vars::Vars;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

pub fn parse_poly(text: &str, vars: &Vars) -> Result<Polynomial, ParseError> {
    let mut p = Parser { input: text.as_bytes(), pos: 0, vars };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut negate_first = false;
        if self.eat(b'-') {
            negate_first = true;
        }
        let first = self.term()?;
        let mut acc = if negate_first { first.neg() } else { first };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.natural()?;
            if n > u32::MAX as u64 {
                return Err(self.error("exponent too large"));
            }
            Ok(base.pow(n as u32))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|c| c.is_ascii_alphanumeric() || c == b'_' || c == b'\'')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                match self.vars.index_of(name) {
                    Some(i) => Ok(Polynomial::variable(self.vars, i)),
                    None => Err(ParseError {
                        position: start,
                        message: format!("unknown variable `{name}`"),
                    }),
                }
            }
            _ => Err(self.error("expected a variable, number, or `(`")),
        }
    }

    fn natural(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number too large"))
    }

    fn big_natural(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos]).unwrap().parse().unwrap())
    }

    fn rational(&mut self) -> Result<Polynomial, ParseError> {
        let numer = self.big_natural()?;
        if self.eat(b'/') {
            let dpos = self.pos;
            let denom = self.big_natural()?;
            if denom.is_zero() {
                return Err(ParseError { position: dpos, message: "zero denominator".into() });
            }
            Ok(Polynomial::constant(self.vars, Rational::new(numer, denom)))
        } else {
            Ok(Polynomial::constant(self.vars, Rational::from_integer(numer)))
        }
    }
}
