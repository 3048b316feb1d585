//! Arithmetic in finite fields `F_{p^n}` with `p^n <= 2^20`.
//!
//! An element of `F_{p^n}` is the residue of a polynomial of degree `< n` over
//! `F_p` modulo a monic irreducible `m(X)` of degree `n`. It is stored as the
//! base-`p` integer formed by its coefficient vector `(c_0, ..., c_{n-1})` with
//! `c_0` least significant. That index doubles as the canonical element order
//! used everywhere output has to be deterministic.
//!
//! Elements do not carry their field; [`Elem`] is a plain index and all
//! arithmetic goes through a [`Field`] handle. [`FieldElement`] pairs the two
//! for the checked, self-describing API.

mod build;
mod embed;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

pub use embed::Embedding;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const ENVELOPE: u64 = 1 << 20;

/// An element of some finite field, identified by its canonical index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

const NO_LOG: u32 = u32::MAX;

pub(crate) struct FieldData {
    id: u64,
    p: u32,
    n: u32,
    q: u32,
    /// `c_0, ..., c_n` with `c_n = 1`.
    modulus: Vec<u32>,
    canonical: bool,
    primitive: u32,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, only for odd `p` with `n > 1`.
    zech: Vec<u32>,
}

/// A finite field `F_{p^n}`. Cheap to clone; instances are interned so two
/// handles for the same `(p, modulus)` share their tables.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

#[derive(Default)]
struct Registry {
    by_modulus: HashMap<(u32, Vec<u32>), Field>,
    canonical: HashMap<(u32, u32), Field>,
}

fn registry() -> &'static Mutex<Registry> {
    static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u64, n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.saturating_mul(p);
        if q > ENVELOPE {
            return Err(Error::EnvelopeExceeded { p, n });
        }
    }
    Ok(q as u32)
}

impl Field {
    /// The field `F_{p^n}` with its canonical modulus: the monic irreducible of
    /// degree `n` whose coefficient vector is smallest as a base-`p` integer.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        checked_order(p, n as u64)?;
        let key = (p as u32, n);
        if let Some(f) = registry().lock().unwrap().canonical.get(&key) {
            return Ok(f.clone());
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            build::canonical_modulus(p as u32, n)
        };
        let field = Self::intern(p as u32, modulus, true);
        let mut reg = registry().lock().unwrap();
        Ok(reg.canonical.entry(key).or_insert(field).clone())
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// The canonical field with `q` elements.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, n) = prime_power(q).ok_or_else(|| {
            Error::InvalidModulus(format!("{q} is not a prime power"))
        })?;
        Field::new(p, n)
    }

    /// A field with an explicitly chosen modulus `c_0 + c_1 X + ... + X^n`.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = modulus.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
            Error::InvalidModulus("modulus must have degree at least 1".into())
        })?;
        checked_order(p, n as u64)?;
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidModulus("coefficient out of range".into()));
        }
        if modulus[n] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let p = p as u32;
        let modulus = modulus.to_vec();
        if n == 1 {
            // Every linear modulus yields the same residue representation.
            return Field::prime(p as u64);
        }
        if !build::is_irreducible_over_prime(p, &modulus) {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        if let Some(f) = registry()
            .lock()
            .unwrap()
            .by_modulus
            .get(&(p, modulus.clone()))
        {
            return Ok(f.clone());
        }
        let canonical = build::canonical_modulus(p, n as u32) == modulus;
        Ok(Self::intern(p, modulus, canonical))
    }

    fn intern(p: u32, modulus: Vec<u32>, canonical: bool) -> Field {
        let key = (p, modulus.clone());
        if let Some(f) = registry().lock().unwrap().by_modulus.get(&key) {
            return f.clone();
        }
        static NEXT_ID: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(1);
        let id = NEXT_ID.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let data = build::build_tables(id, p, modulus, canonical);
        let field = Field(Arc::new(data));
        let mut reg = registry().lock().unwrap();
        reg.by_modulus.entry(key).or_insert(field).clone()
    }

    /// The canonical field of order `q^k` where `q` is this field's order.
    pub fn extension(&self, k: u32) -> Result<Field> {
        let n = self.n().checked_mul(k).ok_or(Error::ZeroDegree)?;
        Field::new(self.p() as u64, n)
    }

    pub fn prime_field(&self) -> Field {
        Field::prime(self.p() as u64).expect("characteristic is prime")
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    /// Number of elements `q = p^n`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub(crate) fn id(&self) -> u64 {
        self.0.id
    }

    /// `p^n` descriptor, e.g. `2^4`.
    pub fn descriptor(&self) -> String {
        format!("{}^{}", self.p(), self.n())
    }

    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `X`, written `u` in text. `None` for prime fields.
    pub fn generator(&self) -> Option<Elem> {
        (self.n() > 1).then_some(Elem(self.p()))
    }

    /// The primitive element the multiplication tables are built on.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.primitive)
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.order() as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange(index))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.p();
        if coeffs.len() > self.n() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::ElementOutOfRange(coeffs.len() as u64));
        }
        Ok(Elem(
            coeffs
                .iter()
                .rev()
                .fold(0u32, |acc, &c| acc * p + c),
        ))
    }

    /// Coefficient vector `(c_0, ..., c_{n-1})` over `F_p`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut v = a.0;
        (0..self.n())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order()).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order()).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if d.n == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= d.p { s - d.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let m = d.q - 1;
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + m - la };
        let z = d.zech[k as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            Elem(d.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return a;
        }
        if d.n == 1 {
            return Elem(d.p - a.0);
        }
        let l = d.log[a.0 as usize] + (d.q - 1) / 2;
        Elem(d.exp[l as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let d = &*self.0;
        let m = d.q - 1;
        let l = d.log[a.0 as usize];
        Some(Elem(d.exp[((m - l) % m) as usize]))
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    /// `a / b`. Panics if `b` is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        let m = (d.q - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % m)) % m;
        Elem(d.exp[l as usize])
    }

    /// Discrete logarithm to the table base. Internal use only.
    pub(crate) fn log_of(&self, a: Elem) -> u32 {
        self.0.log[a.0 as usize]
    }

    pub(crate) fn exp_of(&self, k: u64) -> Elem {
        Elem(self.0.exp[(k % (self.order() as u64 - 1)) as usize])
    }

    /// `a^{p^{e n0}}`: the `e`-th power of the Frobenius relative to the
    /// subfield of degree `n0`.
    pub fn frobenius(&self, a: Elem, e: u64, n0: u32) -> Result<Elem> {
        self.check_subfield_degree(n0)?;
        let steps = (e % (self.n() / n0) as u64) * n0 as u64;
        Ok(self.frobenius_p(a, steps))
    }

    /// `a^{p^k}`.
    pub fn frobenius_p(&self, a: Elem, k: u64) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let m = (self.order() - 1) as u64;
        let mut e = 1u64;
        for _ in 0..(k % self.n() as u64) {
            e = e * self.p() as u64 % m.max(1);
        }
        self.pow(a, if m == 1 { 1 } else { e })
    }

    /// Trace down to the subfield of degree `n0`, returned as an element of
    /// this field.
    pub fn trace(&self, a: Elem, n0: u32) -> Result<Elem> {
        self.check_subfield_degree(n0)?;
        let steps = self.n() / n0;
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..steps {
            acc = self.add(acc, x);
            x = self.frobenius_p(x, n0 as u64);
        }
        Ok(acc)
    }

    /// Absolute trace `Tr_{q/p}` as an element of `F_p`.
    pub fn absolute_trace(&self, a: Elem) -> u32 {
        self.trace(a, 1).expect("1 divides n").0
    }

    /// `Tr_{q/q0}` where `q0` is the order of the subfield.
    pub fn trace_to_order(&self, a: Elem, subfield_order: u64) -> Result<Elem> {
        let n0 = self.subfield_degree_of_order(subfield_order)?;
        self.trace(a, n0)
    }

    pub(crate) fn subfield_degree_of_order(&self, order: u64) -> Result<u32> {
        match prime_power(order) {
            Some((p, n0)) if p == self.p() as u64 && self.n() % n0 == 0 => Ok(n0),
            _ => Err(Error::NoSubfieldRelation {
                sub: order.to_string(),
                sup: self.descriptor(),
            }),
        }
    }

    fn check_subfield_degree(&self, n0: u32) -> Result<()> {
        if n0 == 0 || self.n() % n0 != 0 {
            return Err(Error::NoSubfieldRelation {
                sub: format!("{}^{}", self.p(), n0),
                sup: self.descriptor(),
            });
        }
        Ok(())
    }

    /// Whether `a` lies in the subfield of degree `n0`.
    pub fn in_subfield(&self, a: Elem, n0: u32) -> bool {
        self.n() % n0 == 0 && self.frobenius_p(a, n0 as u64) == a
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if self.p() == 2 || a.0 == 0 {
            return true;
        }
        self.log_of(a) % 2 == 0
    }

    /// A square root of `a`, if one exists.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return Some(a);
        }
        let m = self.order() - 1;
        let l = self.log_of(a);
        if self.p() == 2 {
            // squaring is a bijection; m is odd
            let half = (l as u64 * (m as u64).div_ceil(2)) % m as u64;
            return Some(self.exp_of(half));
        }
        (l % 2 == 0).then(|| self.exp_of((l / 2) as u64))
    }

    /// Embed `a` into `target`, which must contain this field.
    pub fn embed(&self, a: Elem, target: &Field) -> Result<Elem> {
        Ok(Embedding::between(self, target)?.apply(a))
    }

    /// Text form of an element, a polynomial in `u` with digits in `[0, p)`.
    pub fn format_elem(&self, a: Elem) -> String {
        let coeffs = self.coeffs(a);
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Whether [`format_elem`](Self::format_elem) yields a single product
    /// term, safe to juxtapose with `*` without parentheses.
    pub(crate) fn elem_is_atomic(&self, a: Elem) -> bool {
        self.coeffs(a).iter().filter(|&&c| c != 0).count() <= 1
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

/// `q = p^n` decomposition.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut n = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// Binary field operations exposed through [`FieldElement::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element bound to its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Self {
        debug_assert!(value.0 < field.order());
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (a, b) = (self.value, other.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.mul(a, f.try_inv(b).ok_or(Error::DivisionByZero)?),
        };
        Ok(FieldElement::new(f, value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.try_inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement::new(&self.field, v))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement::new(&self.field, self.field.pow(self.value, e))
    }

    /// Frobenius relative to `over`, a subfield of this element's field.
    pub fn frobenius(&self, e: u64, over: &Field) -> Result<FieldElement> {
        let n0 = self.subfield_degree(over)?;
        Ok(FieldElement::new(
            &self.field,
            self.field.frobenius(self.value, e, n0)?,
        ))
    }

    pub fn trace(&self, subfield_order: u64) -> Result<FieldElement> {
        Ok(FieldElement::new(
            &self.field,
            self.field.trace_to_order(self.value, subfield_order)?,
        ))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }

    pub fn embed(&self, target: &Field) -> Result<FieldElement> {
        Ok(FieldElement::new(target, self.field.embed(self.value, target)?))
    }

    /// The preimage of this element in the subfield `sub`.
    pub fn restrict(&self, sub: &Field) -> Result<FieldElement> {
        let emb = Embedding::between(sub, &self.field)?;
        let v = emb.preimage(self.value).ok_or(Error::NotInSubfield)?;
        Ok(FieldElement::new(sub, v))
    }

    fn subfield_degree(&self, over: &Field) -> Result<u32> {
        if over.p() != self.field.p() || self.field.n() % over.n() != 0 {
            return Err(Error::NoSubfieldRelation {
                sub: over.descriptor(),
                sup: self.field.descriptor(),
            });
        }
        Ok(over.n())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format_elem(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}
