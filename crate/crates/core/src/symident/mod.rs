//! Sparse multivariate polynomials over the integers: exact arithmetic,
//! resultants by fraction-free elimination, and evaluation over finite fields.

mod fixtures;
mod parse;
mod resultant;

pub use fixtures::{fixture, fixtures_checksum, Fixture, FIXTURES_SHA256};
pub use parse::{parse_multipoly, MAX_EXPONENT, MAX_TERMS};
pub use resultant::{resultant_cofactor, resultant_wrt, sylvester};

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Exponent vector aligned with the variable list of its polynomial, ordered
/// so that iteration runs in graded lexicographic order, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with integer coefficients. Variables are kept sorted by name
/// and only those that occur are listed, so equal polynomials compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> MultiPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> MultiPoly {
        MultiPoly::monomial(BigInt::one(), &[(name, 1)])
    }

    /// `c * Π name^e`.
    pub fn monomial(c: BigInt, powers: &[(&str, u32)]) -> MultiPoly {
        let mut exps: BTreeMap<String, u32> = BTreeMap::new();
        for &(v, e) in powers {
            *exps.entry(v.to_string()).or_default() += e;
        }
        let vars: Vec<String> = exps.keys().cloned().collect();
        let m = Monomial(exps.values().copied().collect());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { vars, terms }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order as (coefficient, [(variable, exponent)]).
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, Vec<(&str, u32)>)> {
        self.terms.iter().map(|(m, c)| {
            let powers = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v.as_str(), e))
                .collect();
            (c, powers)
        })
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Degree in `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let Some(i) = self.var_index(var) else {
            return Some(0);
        };
        self.terms.keys().map(|m| m.0[i]).max()
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(var)).ok()
    }

    /// Drop variables that no longer occur.
    fn normalized(self) -> MultiPoly {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, &u)| u).map(|(&e, _)| e).collect();
                (Monomial(e), c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    /// The same polynomial over a superset of its variables.
    fn widened(&self, vars: &[String]) -> BTreeMap<Monomial, BigInt> {
        if vars == self.vars.as_slice() {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (k, &i) in map.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    fn add_signed(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let vars = self.union_vars(other);
        let mut terms = self.widened(&vars);
        for (m, c) in other.widened(&vars) {
            add_term(&mut terms, m, if negate { -c } else { c });
        }
        MultiPoly { vars, terms }.normalized()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add_signed(other, true)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(other);
        let a = self.widened(&vars);
        let b = other.widened(&vars);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                *terms.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }.normalized()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`; `InexactDivision` when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = self.union_vars(d);
        let dt = d.widened(&vars);
        let (dm, dc) = dt.iter().next().expect("nonzero");
        let mut rem = self.widened(&vars);
        let mut quot: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next() {
            if !dm.divides(m) {
                return Err(Error::InexactDivision);
            }
            let (qc, r) = c.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            let qm = Monomial(m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect());
            for (tm, tc) in &dt {
                let m = Monomial(tm.0.iter().zip(&qm.0).map(|(a, b)| a + b).collect());
                add_term(&mut rem, m, -(&qc * tc));
            }
            quot.insert(qm, qc);
        }
        Ok(MultiPoly { vars, terms: quot }.normalized())
    }

    /// Coefficients as a polynomial in `var`, lowest degree first.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![
            MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            deg + 1
        ];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::take(&mut e[i]) as usize;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out.into_iter().map(MultiPoly::normalized).collect()
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Reduce mod `p` and evaluate at the assignment, in `field`.
    pub fn instantiate(&self, assignment: &BTreeMap<String, Elem>, field: &Field) -> Result<Elem> {
        let values: Vec<Elem> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        if let Some(&v) = values.iter().find(|v| v.0 >= field.order()) {
            return Err(Error::ElementOutOfRange(v.0 as u64));
        }
        let p = BigInt::from(field.p());
        let mut acc = Elem::ZERO;
        for (m, c) in &self.terms {
            let r = c.mod_floor(&p).to_i64().expect("reduced mod p");
            let mut t = field.from_int(r);
            for (&x, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t = field.mul(t, field.pow(x, e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    match terms.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

pub fn mpoly_arith(f: &MultiPoly, g: &MultiPoly, op: MultiOp) -> MultiPoly {
    match op {
        MultiOp::Add => f.add(g),
        MultiOp::Sub => f.sub(g),
        MultiOp::Mul => f.mul(g),
    }
}

/// Free-function form of [`MultiPoly::instantiate`].
pub fn instantiate(f: &MultiPoly, assignment: &BTreeMap<String, Elem>, field: &Field) -> Result<Elem> {
    f.instantiate(assignment, field)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, powers)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || powers.is_empty() {
                write!(f, "{a}")?;
                first = false;
            }
            for (v, e) in powers {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if e == 1 {
                    f.write_str(v)?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
