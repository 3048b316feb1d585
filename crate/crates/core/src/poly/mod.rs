//! Dense univariate polynomials over a finite field.

mod roots;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};

/// A polynomial with coefficients stored constant term first and no trailing
/// zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Coefficients given as field indices, constant term first.
    pub fn from_indices(field: &Field, idx: &[u32]) -> Result<Poly> {
        let coeffs = idx
            .iter()
            .map(|&i| field.elem(i as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(field, coeffs))
    }

    /// `X - r`.
    pub fn linear(field: &Field, r: Elem) -> Poly {
        Poly::from_coeffs(field, vec![field.neg(r), Elem::ONE])
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(field), |acc, &r| acc.mul_linear(r))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub(crate) fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Elem::ONE
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn check_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn scale(&self, c: Elem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// `self * X^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// `self * (X - r)`.
    pub fn mul_linear(&self, r: Elem) -> Poly {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = f.add(out[i + 1], c);
            out[i] = f.sub(out[i], f.mul(c, r));
        }
        Poly::from_coeffs(f, out)
    }

    /// Synthetic division by `X - r`: returns `(quotient, self(r))`.
    pub fn div_linear(&self, r: Elem) -> (Poly, Elem) {
        let f = &self.field;
        if self.is_zero() {
            return (self.clone(), Elem::ZERO);
        }
        let n = self.coeffs.len();
        let mut quo = vec![Elem::ZERO; n - 1];
        let mut acc = Elem::ZERO;
        for i in (0..n).rev() {
            acc = f.add(f.mul(acc, r), self.coeffs[i]);
            if i > 0 {
                quo[i - 1] = acc;
            }
        }
        (Poly::from_coeffs(f, quo), acc)
    }

    /// The first `count` Taylor coefficients at `r`, i.e. the `c_t` with
    /// `self = sum c_t (X - r)^t`, by repeated synthetic division.
    pub fn taylor_coeffs(&self, r: Elem, count: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.clone();
        for _ in 0..count {
            if cur.is_zero() {
                out.push(Elem::ZERO);
                continue;
            }
            let (q, v) = cur.div_linear(r);
            out.push(v);
            cur = q;
        }
        out
    }

    /// Multiplicity of `r` as a root, by repeated exact division.
    pub fn root_multiplicity(&self, r: Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, v) = cur.div_linear(r);
            if !v.is_zero() {
                return k;
            }
            k += 1;
            cur = q;
        }
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        self.checked_div_rem(d).expect("division by the zero polynomial")
    }

    pub fn checked_div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if self.field != d.field {
            return Err(Error::FieldMismatch);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Elem::ZERO; rem.len() - dn];
        for i in (0..quo.len()).rev() {
            let c = f.mul(rem[i + dn], lc_inv);
            quo[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
        }
        rem.truncate(dn);
        Ok((Poly::from_coeffs(f, quo), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.checked_div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut result = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.check_field(g);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, &c| {
                &(&acc * g) + &Poly::constant(&self.field, c)
            })
    }

    /// Image of this polynomial under the embedding of its field into `target`.
    pub fn embed(&self, target: &Field) -> Result<Poly> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let emb = Embedding::between(&self.field, target)?;
        Ok(Poly::from_coeffs(
            target,
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        ))
    }

    /// The polynomial over the subfield `sub` with the same coefficients.
    pub fn restrict(&self, sub: &Field) -> Result<Poly> {
        if &self.field == sub {
            return Ok(self.clone());
        }
        let emb = Embedding::between(sub, &self.field)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| emb.preimage(c).ok_or(Error::NotInSubfield))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(sub, coeffs))
    }

    /// `X^{q^k} mod self` for `k = 0..=count`, where `q` is the field order.
    fn frobenius_powers_of_x(&self, count: usize) -> Vec<Poly> {
        let q = self.field.order() as u64;
        let mut out = Vec::with_capacity(count + 1);
        out.push(Poly::x(&self.field).rem(self));
        for _ in 0..count {
            let last = out.last().unwrap();
            out.push(last.pow_mod(q, self));
        }
        out
    }

    /// Irreducibility over the coefficient field (Rabin's test).
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(0) | None => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let frob = f.frobenius_powers_of_x(n);
        let x = Poly::x(&self.field);
        if &frob[n] - &x.rem(&f) != Poly::zero(&self.field) {
            return Ok(false);
        }
        Ok(prime_divisors(n).into_iter().all(|l| {
            let h = &frob[n / l] - &x;
            h.gcd(&f).is_one()
        }))
    }

    /// Number of distinct monic irreducible factors of each degree.
    pub fn distinct_degree_counts(&self) -> Result<BTreeMap<usize, usize>> {
        let n = match self.degree() {
            None => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let mut counts = BTreeMap::new();
        if n == 0 {
            return Ok(counts);
        }
        let f = self.monic();
        let frob = f.frobenius_powers_of_x(n);
        let x = Poly::x(&self.field);
        for d in 1..=n {
            let h = (&frob[d] - &x).gcd(&f);
            let known: usize = (1..d)
                .filter(|e| d % e == 0)
                .map(|e| e * counts.get(&e).copied().unwrap_or(0))
                .sum();
            let count = (h.deg0() - known) / d;
            if count > 0 {
                counts.insert(d, count);
            }
        }
        Ok(counts)
    }

    /// Degree over the coefficient field of the splitting field: the lcm of
    /// the irreducible factor degrees.
    pub fn splitting_degree(&self) -> Result<u32> {
        let counts = self.distinct_degree_counts()?;
        Ok(counts
            .keys()
            .fold(1u32, |acc, &d| num_integer::lcm(acc, d as u32)))
    }

    /// The canonical field in which this polynomial splits.
    pub fn splitting_field(&self) -> Result<Field> {
        self.field.extension(self.splitting_degree()?)
    }

    /// Roots in `ext` with multiplicities, sorted by root.
    pub fn roots_over(&self, ext: &Field) -> Result<Vec<(Elem, usize)>> {
        if self.is_zero() {
            return Err(Error::ConstantPolynomial);
        }
        let g = self.embed(ext)?;
        Ok(roots::roots(&g))
    }

    /// Roots in the coefficient field.
    pub fn roots(&self) -> Vec<(Elem, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        roots::roots(self)
    }

    pub fn has_root_in_field(&self) -> bool {
        if self.is_constant() {
            return false;
        }
        if self.field.order() <= 1 << 12 {
            return self.field.elements().any(|x| self.eval(x).is_zero());
        }
        !self.roots().is_empty()
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = f.add(*c, s);
        }
        Poly::from_coeffs(f, coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", crate::text::format_poly(self), self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

/// Operations exposed through [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOutput {
    Single(Poly),
    QuotientRemainder(Poly, Poly),
}

/// Checked polynomial arithmetic: field mismatches and zero divisors are
/// reported as errors instead of panics.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyOutput> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => PolyOutput::Single(f + g),
        PolyOp::Sub => PolyOutput::Single(f - g),
        PolyOp::Mul => PolyOutput::Single(f * g),
        PolyOp::DivRem => {
            let (q, r) = f.checked_div_rem(g)?;
            PolyOutput::QuotientRemainder(q, r)
        }
        PolyOp::Gcd => PolyOutput::Single(f.gcd(g)),
    })
}
