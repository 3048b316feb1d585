//! Text input for [`MultiPoly`].
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' uint)?
//! base   := uint | ident | '(' expr ')'
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Juxtaposition multiplies, so `4 a r1^6` reads as `4*a*r1^6`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::MultiPoly;
use crate::error::{Error, Result};

pub const MAX_EXPONENT: u32 = 1024;
/// Bound on the term count of any intermediate value, and on the number of
/// term products a single multiplication may form.
pub const MAX_TERMS: usize = 1 << 16;
const MAX_PRODUCTS: usize = 1 << 22;
const MAX_DEPTH: usize = 256;

pub fn parse_multipoly(s: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(self.pos, msg)
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn checked(&self, v: MultiPoly, at: usize) -> Result<MultiPoly> {
        if v.term_count() > MAX_TERMS {
            return Err(Error::parse(at, "term limit exceeded"));
        }
        Ok(v)
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly, at: usize) -> Result<MultiPoly> {
        if a.term_count().saturating_mul(b.term_count()) > MAX_PRODUCTS {
            return Err(Error::parse(at, "term limit exceeded"));
        }
        self.checked(a.mul(b), at)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let at = self.pos;
            let sub = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc = self.checked(if sub { acc.sub(&t) } else { acc.add(&t) }, at)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = self.mul(&acc, &f, at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.uint()?;
        let e = e
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| Error::parse(at, "exponent too large"))?;
        let mut acc = MultiPoly::constant(1);
        let mut sq = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq, at)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq, at)?;
            }
        }
        Ok(acc)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn base(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(MultiPoly::constant(self.uint()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(MultiPoly::var(name))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
