//! Text grammar for polynomials.
//!
//! ```text
//! poly  = ["-"] term (("+" | "-") term)*
//! term  = coeff | [coeff "*"] factor ("*" factor)*
//! coeff = digits ["/" digits]
//! factor = var ["^" digits]
//! ```
//!
//! Printing (`Display`) emits exactly this grammar with terms joined by
//! `" + "` / `" - "`, so `parse(print(f)) == f`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::arith::Scalar;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.err("expected variable name"));
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier"))
    }
}

/// Parses a polynomial in `ring`.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let field = ring.field();
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut negative = false;
    if cur.peek() == Some(b'-') {
        cur.pos += 1;
        negative = true;
    }
    loop {
        let mut coeff = field.one();
        let mut mono = Monomial::one(ring.nvars());
        let mut need_factor = true;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = cur.digits()?;
            let den = if cur.peek() == Some(b'/') {
                cur.pos += 1;
                cur.digits()?
            } else {
                BigInt::from(1)
            };
            coeff = field.from_ratio(&num, &den).map_err(|e| cur.err(e.to_string()))?;
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                need_factor = false;
            }
        }
        if need_factor {
            loop {
                let start = cur.pos;
                let name = cur.ident()?;
                let var = ring.var_index(name).ok_or_else(|| Error::Parse { pos: start, msg: format!("unknown variable `{name}`") })?;
                let mut e = BigInt::from(1);
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    e = cur.digits()?;
                }
                let e: u32 = e.try_into().map_err(|_| cur.err("exponent too large"))?;
                let total = mono.exp(var) as u32 + e;
                if total > u8::MAX as u32 {
                    return Err(Error::ExponentOverflow);
                }
                mono.set_exp(var, total as u8);
                if cur.peek() == Some(b'*') {
                    cur.pos += 1;
                } else {
                    break;
                }
            }
        }
        if negative {
            coeff = coeff.neg();
        }
        terms.push((mono, coeff));
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(c) => return Err(cur.err(format!("unexpected `{}`", c as char))),
        }
        cur.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parses one polynomial per non-empty line; `#` starts a comment line.
pub fn parse_polynomial_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<Polynomial>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_polynomial(ring, l))
        .collect()
}
