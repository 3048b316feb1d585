//! Power sums `Σ_{x ∈ F_q} f(x)^s` of rational functions.
//!
//! The closed form expands `f^s` in partial fractions over the splitting
//! field of the denominator and replaces each `Σ_x 1/(x - r)^k` by
//! `1/(r^q - r)^k`, valid for `k <= q`. Pole coefficients come from Taylor
//! expansions computed with synthetic division, so nothing depends on formal
//! derivatives (which vanish too often in small characteristic).

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

/// Check `Σ_{x ∈ F_q} 1/(x - X)^k = 1/(X^q - X)^k` as an identity of rational
/// functions over `F_q`.
pub fn carlitz_identity_check(q: u64, k: u64) -> Result<bool> {
    if k == 0 || k > q {
        return Err(Error::KOutOfRange { k, q });
    }
    let field = Field::from_order(q)?;
    let sign = if k % 2 == 0 { field.one() } else { field.neg(field.one()) };
    let mut lhs = RationalFunction::zero(&field);
    for x in field.elements() {
        let term = RationalFunction::new(
            Poly::constant(&field, sign),
            Poly::linear(&field, x).pow(k),
        )?;
        lhs = &lhs + &term;
    }
    let xq = &Poly::monomial(&field, field.one(), q as usize) - &Poly::x(&field);
    let rhs = RationalFunction::new(Poly::one(&field), xq.pow(k))?;
    Ok(lhs == rhs)
}

/// `b / (X - r)^k` over the splitting field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub root: Elem,
    pub order: usize,
    pub coeff: Elem,
}

/// `f^s = Σ a_i X^i + Σ b_j / (X - r_j)^{k_j}`, the `a_i` over the base field
/// and the pole data over `ext_field`.
#[derive(Clone, Debug)]
pub struct PartialFractionDecomposition {
    pub base_field: Field,
    pub ext_field: Field,
    pub poly_part: Vec<Elem>,
    pub pole_terms: Vec<PoleTerm>,
}

impl PartialFractionDecomposition {
    /// Reassemble the decomposition as a rational function over `ext_field`.
    pub fn recombine(&self) -> Result<RationalFunction> {
        let ext = &self.ext_field;
        let a = Poly::from_coeffs(&self.base_field, self.poly_part.clone()).embed(ext)?;
        let mut acc = RationalFunction::from_poly(a);
        for t in &self.pole_terms {
            let term = RationalFunction::new(
                Poly::constant(ext, t.coeff),
                Poly::linear(ext, t.root).pow(t.order as u64),
            )?;
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for PartialFractionDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = Poly::from_coeffs(&self.base_field, self.poly_part.clone());
        write!(f, "{a}")?;
        for t in &self.pole_terms {
            write!(
                f,
                " + ({})/(x - ({}))^{}",
                self.ext_field.format_elem(t.coeff),
                self.ext_field.format_elem(t.root),
                t.order
            )?;
        }
        Ok(())
    }
}

/// Truncated power series over a field, lowest term first.
fn series_mul(field: &Field, a: &[Elem], b: &[Elem], len: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

fn series_pow(field: &Field, a: &[Elem], mut e: u64, len: usize) -> Vec<Elem> {
    let mut result = vec![Elem::ZERO; len];
    if len == 0 {
        return result;
    }
    result[0] = Elem::ONE;
    let mut base: Vec<Elem> = a.iter().copied().take(len).collect();
    base.resize(len, Elem::ZERO);
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(field, &result, &base, len);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(field, &base, &base, len);
        }
    }
    result
}

/// `a / b` as truncated series; `b[0]` must be nonzero.
fn series_div(field: &Field, a: &[Elem], b: &[Elem], len: usize) -> Vec<Elem> {
    let inv0 = field.inv(b[0]);
    let mut out = vec![Elem::ZERO; len];
    for t in 0..len {
        let mut acc = a.get(t).copied().unwrap_or(Elem::ZERO);
        for j in 1..=t.min(b.len().saturating_sub(1)) {
            acc = field.sub(acc, field.mul(b[j], out[t - j]));
        }
        out[t] = field.mul(acc, inv0);
    }
    out
}

struct Pole {
    root: Elem,
    multiplicity: usize,
    /// Frobenius orbit size over the base field.
    orbit: u32,
    /// Numerator and denominator with `(X - root)^multiplicity` removed,
    /// with their Taylor coefficients at the root up to order `q·multiplicity`.
    num: Poly,
    cof: Poly,
    num_taylor: Vec<Elem>,
    cof_taylor: Vec<Elem>,
}

/// Reusable power-sum machinery for one rational function: the splitting
/// field, the poles and their Taylor data are computed once.
pub struct PowerSums {
    f: RationalFunction,
    base: Field,
    ext: Field,
    emb: std::sync::Arc<Embedding>,
    poles: Vec<Pole>,
    /// One representative per Frobenius orbit, indices into `poles`.
    orbit_reps: Vec<usize>,
}

impl PowerSums {
    pub fn new(f: &RationalFunction) -> Result<PowerSums> {
        let base = f.field().clone();
        if f.has_pole_in_field() {
            return Err(Error::PoleInBaseField);
        }
        let den = f.den();
        let ext = if den.is_constant() {
            base.clone()
        } else {
            den.splitting_field()?
        };
        let emb = Embedding::between(&base, &ext)?;
        let num_e = f.num().embed(&ext)?;
        let den_e = den.embed(&ext)?;
        let roots = if den.is_constant() {
            Vec::new()
        } else {
            den.roots_over(&ext)?
        };
        let n0 = base.n();
        let max_len = |mult: usize| mult * base.order() as usize;
        let mut poles = Vec::with_capacity(roots.len());
        for &(root, multiplicity) in &roots {
            let mut cof = den_e.clone();
            for _ in 0..multiplicity {
                cof = cof.div_linear(root).0;
            }
            let len = max_len(multiplicity);
            let mut orbit = 1;
            let mut r = ext.frobenius(root, 1, n0)?;
            while r != root {
                orbit += 1;
                r = ext.frobenius(r, 1, n0)?;
            }
            poles.push(Pole {
                root,
                multiplicity,
                orbit,
                num_taylor: num_e.taylor_coeffs(root, len),
                cof_taylor: cof.taylor_coeffs(root, len),
                num: num_e.clone(),
                cof,
            });
        }
        let mut seen = HashSet::new();
        let mut orbit_reps = Vec::new();
        for (i, p) in poles.iter().enumerate() {
            if seen.contains(&p.root) {
                continue;
            }
            orbit_reps.push(i);
            let mut r = p.root;
            for _ in 0..p.orbit {
                seen.insert(r);
                r = ext.frobenius(r, 1, n0)?;
            }
        }
        Ok(PowerSums {
            f: f.clone(),
            base,
            ext,
            emb,
            poles,
            orbit_reps,
        })
    }

    pub fn function(&self) -> &RationalFunction {
        &self.f
    }

    pub fn splitting_field(&self) -> &Field {
        &self.ext
    }

    /// Coefficients `b_1, ..., b_K` of `1/(X - r)^j` in `f^s`, `K = s·e`.
    fn pole_coeffs(&self, pole: &Pole, s: u64) -> Vec<Elem> {
        let ext = &self.ext;
        let k = (s as usize) * pole.multiplicity;
        let (n, d) = if k <= pole.num_taylor.len() {
            (
                series_pow(ext, &pole.num_taylor, s, k),
                series_pow(ext, &pole.cof_taylor, s, k),
            )
        } else {
            (
                series_pow(ext, &pole.num.taylor_coeffs(pole.root, k), s, k),
                series_pow(ext, &pole.cof.taylor_coeffs(pole.root, k), s, k),
            )
        };
        let c = series_div(ext, &n, &d, k);
        // c_t multiplies (X - r)^{t - K}
        let mut b = vec![Elem::ZERO; k + 1];
        for (t, &ct) in c.iter().enumerate() {
            b[k - t] = ct;
        }
        b
    }

    fn polynomial_part(&self, s: u64) -> Poly {
        let num = self.f.num().pow(s);
        if self.f.den().is_one() {
            return num;
        }
        num.div_rem(&self.f.den().pow(s)).0
    }

    pub fn decompose(&self, s: u64) -> Result<PartialFractionDecomposition> {
        if s == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut pole_terms = Vec::new();
        for p in &self.poles {
            let b = self.pole_coeffs(p, s);
            for (order, &coeff) in b.iter().enumerate().skip(1) {
                if !coeff.is_zero() {
                    pole_terms.push(PoleTerm {
                        root: p.root,
                        order,
                        coeff,
                    });
                }
            }
        }
        Ok(PartialFractionDecomposition {
            base_field: self.base.clone(),
            ext_field: self.ext.clone(),
            poly_part: self.polynomial_part(s).coeffs().to_vec(),
            pole_terms,
        })
    }

    /// `Σ_{x ∈ F_q} f(x)^s` by the closed form. Fails with
    /// [`Error::FormulaOutOfRange`] when some pole order `s·e` exceeds `q`.
    pub fn sum(&self, s: u64) -> Result<Elem> {
        if s == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = self.base.order() as u64;
        let base = &self.base;
        if let Some(p) = self.poles.iter().find(|p| s * p.multiplicity as u64 > q) {
            return Err(Error::FormulaOutOfRange(format!(
                "pole order {} exceeds q = {q}",
                s * p.multiplicity as u64
            )));
        }
        let mut total = Elem::ZERO;
        // polynomial part: Σ_x x^i = -1 exactly when i > 0 and (q - 1) | i
        let num_deg = self.f.num().deg0() as u64;
        let den_deg = self.f.den().deg0() as u64;
        if num_deg > den_deg && s * (num_deg - den_deg) >= q - 1 {
            let a = self.polynomial_part(s);
            let mut i = (q - 1) as usize;
            while i < a.coeffs().len() {
                total = base.sub(total, a.coeff(i));
                i += (q - 1) as usize;
            }
        }
        let ext = &self.ext;
        let n0 = base.n();
        let mut pole_sum = Elem::ZERO;
        for &i in &self.orbit_reps {
            let p = &self.poles[i];
            let b = self.pole_coeffs(p, s);
            let rq = ext.frobenius(p.root, 1, n0)?;
            let w = ext.inv(ext.sub(rq, p.root));
            let mut wk = Elem::ONE;
            let mut term = Elem::ZERO;
            for &bk in b.iter().skip(1) {
                wk = ext.mul(wk, w);
                term = ext.add(term, ext.mul(bk, wk));
            }
            // the conjugate poles contribute the conjugate terms
            let mut conj = term;
            for _ in 0..p.orbit {
                pole_sum = ext.add(pole_sum, conj);
                conj = ext.frobenius(conj, 1, n0)?;
            }
        }
        let pole_sum = self
            .emb
            .preimage(pole_sum)
            .expect("power sum must lie in the base field");
        Ok(base.add(total, pole_sum))
    }
}

/// `Σ_{x ∈ F_q} f(x)^s` by the partial-fraction closed form.
pub fn power_sum_closed(f: &RationalFunction, s: u64) -> Result<Elem> {
    if s == 0 {
        return Err(Error::ZeroExponent);
    }
    PowerSums::new(f)?.sum(s)
}

pub fn partial_fractions(f: &RationalFunction, s: u64) -> Result<PartialFractionDecomposition> {
    if s == 0 {
        return Err(Error::ZeroExponent);
    }
    PowerSums::new(f)?.decompose(s)
}

/// `Σ_{x ∈ F_q} f(x)^s` by direct enumeration.
pub fn power_sum_brute(f: &RationalFunction, s: u64) -> Result<Elem> {
    let field = f.field();
    let mut total = Elem::ZERO;
    for x in field.elements() {
        let v = f.eval_affine(x).ok_or(Error::PoleInBaseField)?;
        total = field.add(total, field.pow(v, s));
    }
    Ok(total)
}

/// All power sums `s = 1..=max_s` by enumeration, sharing the value table.
pub fn power_sums_brute(f: &RationalFunction, max_s: u64) -> Result<Vec<Elem>> {
    let field = f.field();
    let values = field
        .elements()
        .map(|x| f.eval_affine(x).ok_or(Error::PoleInBaseField))
        .collect::<Result<Vec<_>>>()?;
    let mut powers = values.clone();
    let mut out = Vec::with_capacity(max_s as usize);
    for s in 1..=max_s {
        if s > 1 {
            for (p, &v) in powers.iter_mut().zip(&values) {
                *p = field.mul(*p, v);
            }
        }
        out.push(powers.iter().fold(Elem::ZERO, |acc, &p| field.add(acc, p)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
