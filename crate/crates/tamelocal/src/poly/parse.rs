//! Parser for the polynomial text grammar: integer literals, the variables
//! s/t/x, the operators + - * ^, and parentheses. `parse(print(p)) == p`
//! holds for every polynomial.

use super::tri::{IntPolynomial, Var};
use crate::error::{Error, Result};
use num_bigint::BigInt;

const MAX_EXPONENT: u32 = 10_000;
const MAX_DEPTH: u32 = 256;

pub fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let value = p.expr(0)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\n') | Some(b'\r')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self, depth: u32) -> Result<IntPolynomial> {
        if depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        self.skip_ws();
        let mut negate_first = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate_first = true;
        }
        let mut acc = self.term(depth)?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term(depth)?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term(depth)?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, depth: u32) -> Result<IntPolynomial> {
        let mut acc = self.factor(depth)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor(depth)?;
                acc = acc.mul(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, depth: u32) -> Result<IntPolynomial> {
        let base = self.atom(depth)?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, depth: u32) -> Result<IntPolynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(IntPolynomial::constant(n))
            }
            Some(b's') => {
                self.pos += 1;
                Ok(IntPolynomial::var(Var::S))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(IntPolynomial::var(Var::T))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(IntPolynomial::var(Var::X))
            }
            Some(c) if c.is_ascii_alphabetic() => Err(Error::UnknownVariable(c as char)),
            Some(_) => Err(self.err("expected a number, variable, or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits
            .parse::<BigInt>()
            .map_err(|_| self.err("invalid integer literal"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let e: u64 = digits
            .parse()
            .map_err(|_| self.err("exponent does not fit"))?;
        if e > MAX_EXPONENT as u64 {
            return Err(self.err("exponent too large"));
        }
        Ok(e as u32)
    }

}
