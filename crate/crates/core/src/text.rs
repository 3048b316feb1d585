//! Text input and output for fields, elements, polynomials and rational
//! functions.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' uint)?
//! base   := 'x' | 'u' | uint | '(' expr ')'
//! ```
//!
//! `u` is the generator of the field (a root of its modulus) and is rejected
//! over prime fields. Integers are reduced mod `p`.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

/// Degree bound for any intermediate value while parsing.
pub const MAX_PARSE_DEGREE: usize = 1024;
/// Bound on parenthesis nesting.
pub const MAX_PARSE_DEPTH: usize = 256;

/// Parse `p^n` or a bare prime power `q`.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    let num = |t: &str, offset: usize| -> Result<u64> {
        let t = t.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(offset, "expected a decimal integer"));
        }
        t.parse::<u64>()
            .map_err(|_| Error::parse(offset, "integer too large"))
    };
    match s.split_once('^') {
        Some((p, n)) => {
            let p = num(p, 0)?;
            let n = num(n, p.to_string().len() + 1)?;
            let n = u32::try_from(n).map_err(|_| Error::EnvelopeExceeded { p, n })?;
            Field::new(p, n)
        }
        None => Field::from_order(num(s, 0)?),
    }
}

pub fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let v = Parser::new(field, s, false).parse()?;
    debug_assert!(v.is_constant());
    Ok(v.num().coeff(0))
}

pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let v = Parser::new(field, s, true).parse()?;
    if !v.is_polynomial() {
        return Err(Error::parse(0, "expression is not a polynomial"));
    }
    Ok(v.num().clone())
}

pub fn parse_ratfun(field: &Field, s: &str) -> Result<RationalFunction> {
    Parser::new(field, s, true).parse()
}

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
    depth: usize,
    allow_x: bool,
}

impl<'a> Parser<'a> {
    fn new(field: &'a Field, s: &'a str, allow_x: bool) -> Self {
        Parser {
            field,
            src: s.as_bytes(),
            pos: 0,
            depth: 0,
            allow_x,
        }
    }

    fn parse(mut self) -> Result<RationalFunction> {
        let v = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(v)
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.pos, msg)
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

    fn check_degree(&self, v: RationalFunction, at: usize) -> Result<RationalFunction> {
        if v.degree() > MAX_PARSE_DEGREE {
            return Err(Error::parse(at, "degree limit exceeded"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<RationalFunction> {
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
            acc = -&acc;
        }
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.check_degree(&acc + &t, at)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.check_degree(&acc - &t, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.factor()?;
        loop {
            let at = self.pos;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.factor()?;
                    if acc.degree() + t.degree() > MAX_PARSE_DEGREE {
                        return Err(Error::parse(at, "degree limit exceeded"));
                    }
                    acc = &acc * &t;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let t = self.factor()?;
                    if acc.degree() + t.degree() > MAX_PARSE_DEGREE {
                        return Err(Error::parse(at, "degree limit exceeded"));
                    }
                    acc = acc
                        .checked_div(&t)
                        .map_err(|_| Error::parse(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let e = self.uint_u64()?;
        if base.is_constant() {
            let c = base.num().coeff(0);
            if c.is_zero() && e == 0 {
                return Ok(RationalFunction::one(self.field));
            }
            return Ok(RationalFunction::constant(self.field, self.field.pow(c, e)));
        }
        match (base.degree() as u64).checked_mul(e) {
            Some(d) if d <= MAX_PARSE_DEGREE as u64 => Ok(base.pow(e)),
            _ => Err(Error::parse(at, "degree limit exceeded")),
        }
    }

    fn base(&mut self) -> Result<RationalFunction> {
        let field = self.field;
        match self.peek() {
            Some(b'x') => {
                if !self.allow_x {
                    return Err(self.err("variable x not allowed in a field element"));
                }
                self.pos += 1;
                Ok(RationalFunction::x(field))
            }
            Some(b'u') => match field.generator() {
                Some(g) => {
                    self.pos += 1;
                    Ok(RationalFunction::constant(field, g))
                }
                None => Err(self.err("generator u is undefined over a prime field")),
            },
            Some(b'(') => {
                if self.depth >= MAX_PARSE_DEPTH {
                    return Err(self.err("nesting too deep"));
                }
                self.pos += 1;
                self.depth += 1;
                let v = self.expr()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b) if b.is_ascii_digit() => {
                let p = field.p() as u64;
                let mut v = 0u64;
                while let Some(&d) = self.src.get(self.pos) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(RationalFunction::constant(field, field.from_int(v as i64)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn uint_u64(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&d) = self.src.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u64))
                .ok_or_else(|| Error::parse(start, "exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an exponent"));
        }
        Ok(v)
    }
}

/// Canonical text of a polynomial: terms by decreasing degree joined by
/// `" + "`, coefficients in element text form, no minus signs.
pub fn format_poly(p: &Poly) -> String {
    let field = p.field();
    let mut parts = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coef = field.format_elem(c);
        parts.push(if mono.is_empty() {
            coef
        } else if c == Elem::ONE {
            mono
        } else if field.elem_is_atomic(c) {
            format!("{coef}*{mono}")
        } else {
            format!("({coef})*{mono}")
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Canonical text of a rational function: `A + R/(Q)` with `A` the
/// polynomial part and `deg R < deg Q`.
pub fn format_ratfun(f: &RationalFunction) -> String {
    if f.is_polynomial() {
        return format_poly(f.num());
    }
    let (a, r) = f.num().div_rem(f.den());
    let r_text = format_poly(&r);
    let single = r.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
    let r_text = if single && !r_text.contains('+') {
        r_text
    } else {
        format!("({r_text})")
    };
    let frac = format!("{r_text}/({})", format_poly(f.den()));
    if a.is_zero() {
        frac
    } else {
        format!("{} + {frac}", format_poly(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, n: u32) -> Field {
        Field::new(p, n).unwrap()
    }

    #[test]
    fn field_descriptors() {
        assert_eq!(parse_field("2^4").unwrap(), field(2, 4));
        assert_eq!(parse_field("9").unwrap(), field(3, 2));
        assert!(matches!(parse_field("6^1"), Err(Error::NotPrime(6))));
        assert!(parse_field("2^40").is_err());
        assert!(parse_field("^").is_err());
        assert!(parse_field("12").is_err());
    }

    #[test]
    fn elements() {
        let f = field(2, 2);
        let u = f.generator().unwrap();
        assert_eq!(parse_elem(&f, "u^2").unwrap(), f.add(u, f.one()));
        assert_eq!(parse_elem(&f, "u+1").unwrap().index(), 3);
        assert_eq!(f.format_elem(parse_elem(&f, "u^2").unwrap()), "u+1");
        let f5 = field(5, 1);
        assert_eq!(parse_elem(&f5, "-1").unwrap().index(), 4);
        assert_eq!(parse_elem(&f5, "1/3").unwrap().index(), 2);
        assert!(parse_elem(&f5, "u").is_err());
        assert!(parse_elem(&f5, "x").is_err());
        assert!(parse_elem(&f5, "1/0").is_err());
    }

    #[test]
    fn polynomials_and_fractions() {
        let f = field(3, 1);
        let p = parse_poly(&f, "x^3 - x + 1").unwrap();
        assert_eq!(format_poly(&p), "x^3 + 2*x + 1");
        let r = parse_ratfun(&f, "x + 1/(x^3-x+1)").unwrap();
        assert_eq!(format_ratfun(&r), "x + 1/(x^3 + 2*x + 1)");
        assert!(parse_poly(&f, "1/x").is_err());
        let f4 = field(2, 2);
        let g = parse_ratfun(&f4, "(1+u)*x^2 + x + 1/(x^2+x+u)").unwrap();
        assert_eq!(format_ratfun(&g), "(u+1)*x^2 + x + 1/(x^2 + x + u)");
        assert_eq!(parse_ratfun(&f4, &format_ratfun(&g)).unwrap(), g);
    }

    #[test]
    fn numerator_parenthesization() {
        let f = field(3, 1);
        let r = parse_ratfun(&f, "x^2 + x - (x+1)/(x^2+1)").unwrap();
        let s = format_ratfun(&r);
        assert_eq!(s, "x^2 + x + (2*x + 2)/(x^2 + 1)");
        assert_eq!(parse_ratfun(&f, &s).unwrap(), r);
    }

    #[test]
    fn limits() {
        let f = field(2, 1);
        assert!(parse_ratfun(&f, "x^100000").is_err());
        assert!(parse_ratfun(&f, "x^99999999999999999999999").is_err());
        let deep = "(".repeat(300) + "x" + &")".repeat(300);
        assert!(parse_ratfun(&f, &deep).is_err());
        assert!(parse_ratfun(&f, "").is_err());
        assert!(parse_ratfun(&f, "x)").is_err());
        assert_eq!(format_ratfun(&parse_ratfun(&f, "0^0").unwrap()), "1");
    }
}
