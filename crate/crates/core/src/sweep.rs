//! Shared machinery for parameter sweeps: conjugacy classes of roots in an
//! extension, and cheap bijectivity checks on value tables.

use crate::error::Result;
use crate::gf::{Elem, Embedding, Field};
use crate::poly::Poly;

/// A Frobenius orbit `r, r^q, ..., r^{q^{d-1}}` of exact size `d`, with its
/// minimal polynomial over the base field.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub roots: Vec<Elem>,
    /// Monic minimal polynomial, coefficients over the base field, lowest first.
    pub min_poly: Vec<Elem>,
}

impl Orbit {
    pub fn root(&self) -> Elem {
        self.roots[0]
    }
}

/// The conjugates of `r` over the subfield of degree `n0`, starting with `r`.
pub fn conjugates(ext: &Field, r: Elem, n0: u32) -> Vec<Elem> {
    let mut out = vec![r];
    let mut x = ext.frobenius_p(r, n0 as u64);
    while x != r {
        out.push(x);
        x = ext.frobenius_p(x, n0 as u64);
    }
    out
}

/// Minimal polynomial of an orbit, as coefficients over `base`.
pub fn min_poly(ext: &Field, emb: &Embedding, roots: &[Elem]) -> Vec<Elem> {
    Poly::from_roots(ext, roots)
        .coeffs()
        .iter()
        .map(|&c| emb.preimage(c).expect("minimal polynomial over the base field"))
        .collect()
}

/// Every orbit of exact size `d` in the degree-`d` extension of `base`,
/// represented by its smallest member, in increasing order of that member.
pub fn orbits(base: &Field, d: u32) -> Result<(Field, Vec<Orbit>)> {
    let ext = base.extension(d)?;
    let emb = Embedding::between(base, &ext)?;
    let n0 = base.n();
    let mut out = Vec::new();
    for r in ext.elements() {
        let roots = conjugates(&ext, r, n0);
        if roots.len() != d as usize || roots.iter().any(|&x| x < r) {
            continue;
        }
        let min_poly = min_poly(&ext, &emb, &roots);
        out.push(Orbit { roots, min_poly });
    }
    Ok((ext, out))
}

/// Every `r` of the degree-`d` extension not in a proper subfield containing
/// the base, each with its orbit.
pub fn generic_roots(base: &Field, d: u32) -> Result<(Field, Vec<Orbit>)> {
    let ext = base.extension(d)?;
    let emb = Embedding::between(base, &ext)?;
    let n0 = base.n();
    let mut out = Vec::new();
    for r in ext.elements() {
        let roots = conjugates(&ext, r, n0);
        if roots.len() != d as usize {
            continue;
        }
        let min_poly = min_poly(&ext, &emb, &roots);
        out.push(Orbit { roots, min_poly });
    }
    Ok((ext, out))
}

/// Horner evaluation of a coefficient list, lowest first.
#[inline]
pub fn horner(field: &Field, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

/// Reusable bitset for checking that a map `F_q -> F_q` is injective.
pub struct Injectivity {
    words: Vec<u64>,
}

impl Injectivity {
    pub fn new(q: u32) -> Injectivity {
        Injectivity {
            words: vec![0; (q as usize).div_ceil(64)],
        }
    }

    /// True iff the values are pairwise distinct.
    pub fn distinct(&mut self, values: impl IntoIterator<Item = Elem>) -> bool {
        self.words.iter_mut().for_each(|w| *w = 0);
        for v in values {
            let (i, b) = ((v.0 >> 6) as usize, 1u64 << (v.0 & 63));
            if self.words[i] & b != 0 {
                return false;
            }
            self.words[i] |= b;
        }
        true
    }
}
