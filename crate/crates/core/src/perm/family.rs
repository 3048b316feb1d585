use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::sweep::conjugates;

/// A member of one of the degree 3 and 4 families. Parameters named `r`
/// (and `b` for [`Family::Form32`], `c` for [`Family::Form36`]) live in the
/// extension of degree 2 or 3 over `F_q`; all others lie in `F_q`. Element
/// indices refer to the canonical field of that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "UPPERCASE")]
pub enum Family {
    /// `X + 1/(X - r) + 1/(X - r^q)`, `q` even.
    T33 { r: Elem },
    /// `aX + 1/(X - r) + 1/(X + r)`, `q` odd, `r^2 ∈ F_q`.
    T34 { a: Elem, r: Elem },
    /// `ε(r1 - r2)^{-2} X + Σ 1/(X - r_i)` over the conjugates of `r`, with
    /// `r1 + r2 + r3 = 0`, characteristic 3.
    T39 { eps: i8, r: Elem },
    /// `X + 1/(X^p - X + δ)` with `Tr(δ) ≠ 0`, `p ∈ {2, 3}`.
    Yuan { delta: Elem },
    /// `X + b/(X - r) + b^q/(X - r^q)`.
    Form32 { b: Elem, r: Elem },
    /// `aX + 1/(X - r) + 1/(X - r^q)`.
    Form33 { a: Elem, r: Elem },
    /// `aX^2 + bX + c/(X - r) + c^q/(X - r^q)`.
    Form36 { a: Elem, b: Elem, c: Elem, r: Elem },
    /// `aX + 1/(X - r) + 1/(X - r^q) + 1/(X - r^{q^2})`.
    Form312 { a: Elem, r: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrFamilySpec {
    pub q: u64,
    #[serde(flatten)]
    pub family: Family,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::T33 { .. } => "T3.3",
            Family::T34 { .. } => "T3.4",
            Family::T39 { .. } => "T3.9",
            Family::Yuan { .. } => "YUAN",
            Family::Form32 { .. } => "FORM3.2",
            Family::Form33 { .. } => "FORM3.3",
            Family::Form36 { .. } => "FORM3.6",
            Family::Form312 { .. } => "FORM3.12",
        };
        f.write_str(name)
    }
}

fn hyp(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn base_elem(field: &Field, a: Elem, name: &str) -> Result<Elem> {
    if a.0 >= field.order() {
        return Err(hyp(format!("{name} is not an element of {field}")));
    }
    Ok(a)
}

/// Root `r` of exact degree `d` over `base`, with its conjugates.
fn generic_root(base: &Field, d: u32, r: Elem) -> Result<(Field, Vec<Elem>)> {
    let ext = base.extension(d)?;
    if r.0 >= ext.order() {
        return Err(hyp(format!("r is not an element of {ext}")));
    }
    let conj = conjugates(&ext, r, base.n());
    if conj.len() != d as usize {
        return Err(hyp(format!("r must have degree {d} over {base}")));
    }
    Ok((ext, conj))
}

/// `Σ c_i / (X - r_i)` over `ext`, pulled back to `base`.
fn partial_sum(base: &Field, ext: &Field, coeffs: &[Elem], roots: &[Elem]) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero(ext);
    for (&c, &r) in coeffs.iter().zip(roots) {
        acc = &acc + &RationalFunction::new(Poly::constant(ext, c), Poly::linear(ext, r))?;
    }
    acc.restrict(base)
        .map_err(|_| hyp("conjugate terms do not combine over the base field"))
}

fn poly_part(base: &Field, coeffs: &[Elem]) -> RationalFunction {
    RationalFunction::from_poly(Poly::from_coeffs(base, coeffs.to_vec()))
}

/// The rational function of a family member, with coefficients in `F_q`.
pub fn build_family(spec: &PrFamilySpec) -> Result<RationalFunction> {
    let base = Field::from_order(spec.q)?;
    let zero = Elem::ZERO;
    let one = Elem::ONE;
    match spec.family {
        Family::T33 { r } => {
            if base.p() != 2 {
                return Err(hyp("T3.3 needs q even"));
            }
            build_family(&PrFamilySpec {
                q: spec.q,
                family: Family::Form33 { a: one, r },
            })
        }
        Family::T34 { a, r } => {
            if base.p() == 2 {
                return Err(hyp("T3.4 needs q odd"));
            }
            let (ext, conj) = generic_root(&base, 2, r)?;
            if ext.add(conj[0], conj[1]) != zero {
                return Err(hyp("T3.4 needs r^2 in F_q"));
            }
            build_family(&PrFamilySpec {
                q: spec.q,
                family: Family::Form33 { a, r },
            })
        }
        Family::T39 { eps, r } => {
            if base.p() != 3 {
                return Err(hyp("T3.9 needs characteristic 3"));
            }
            if eps != 1 && eps != -1 {
                return Err(hyp("eps must be +1 or -1"));
            }
            let (ext, conj) = generic_root(&base, 3, r)?;
            let e1 = conj.iter().fold(zero, |s, &x| ext.add(s, x));
            if e1 != zero {
                return Err(hyp("T3.9 needs r1 + r2 + r3 = 0"));
            }
            let d = ext.sub(conj[0], conj[1]);
            let mut a = ext.inv(ext.mul(d, d));
            if eps < 0 {
                a = ext.neg(a);
            }
            let emb = Embedding::between(&base, &ext)?;
            let a = emb.preimage(a).ok_or_else(|| hyp("(r1 - r2)^2 not in F_q"))?;
            let tail = partial_sum(&base, &ext, &[one, one, one], &conj)?;
            Ok(&poly_part(&base, &[zero, a]) + &tail)
        }
        Family::Yuan { delta } => {
            let p = base.p();
            if p != 2 && p != 3 {
                return Err(hyp("the Yuan family needs p in {2, 3}"));
            }
            let delta = base_elem(&base, delta, "delta")?;
            if base.absolute_trace(delta) == 0 {
                return Err(hyp("Tr(delta) must be nonzero"));
            }
            let mut den = vec![zero; p as usize + 1];
            den[0] = delta;
            den[1] = base.neg(one);
            den[p as usize] = one;
            let tail = RationalFunction::new(Poly::one(&base), Poly::from_coeffs(&base, den))?;
            Ok(&RationalFunction::x(&base) + &tail)
        }
        Family::Form32 { b, r } => {
            let (ext, conj) = generic_root(&base, 2, r)?;
            if b.0 >= ext.order() || b == zero {
                return Err(hyp(format!("b must be a nonzero element of {ext}")));
            }
            let bs = [b, ext.frobenius_p(b, base.n() as u64)];
            let tail = partial_sum(&base, &ext, &bs, &conj)?;
            Ok(&RationalFunction::x(&base) + &tail)
        }
        Family::Form33 { a, r } => {
            let a = base_elem(&base, a, "a")?;
            if a == zero {
                return Err(hyp("a must be nonzero"));
            }
            let (ext, conj) = generic_root(&base, 2, r)?;
            let tail = partial_sum(&base, &ext, &[one, one], &conj)?;
            Ok(&poly_part(&base, &[zero, a]) + &tail)
        }
        Family::Form36 { a, b, c, r } => {
            let a = base_elem(&base, a, "a")?;
            let b = base_elem(&base, b, "b")?;
            if a == zero {
                return Err(hyp("a must be nonzero"));
            }
            let (ext, conj) = generic_root(&base, 2, r)?;
            if c.0 >= ext.order() || c == zero {
                return Err(hyp(format!("c must be a nonzero element of {ext}")));
            }
            let cs = [c, ext.frobenius_p(c, base.n() as u64)];
            let tail = partial_sum(&base, &ext, &cs, &conj)?;
            Ok(&poly_part(&base, &[zero, b, a]) + &tail)
        }
        Family::Form312 { a, r } => {
            let a = base_elem(&base, a, "a")?;
            if a == zero {
                return Err(hyp("a must be nonzero"));
            }
            let (ext, conj) = generic_root(&base, 3, r)?;
            let tail = partial_sum(&base, &ext, &[one, one, one], &conj)?;
            Ok(&poly_part(&base, &[zero, a]) + &tail)
        }
    }
}
