//! Permutation rational functions of `P¹(F_q)`: testing, the families that
//! occur for degrees 3 and 4, and finite-instance theorem verifiers.

mod family;
mod verify;

pub use family::{build_family, Family, PrFamilySpec};
pub use verify::{verify_theorem, Case, Expect, TheoremId, TheoremReport, VerifyOptions};

use crate::carlitz::{power_sums_brute, PowerSums};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::ratfun::{MobiusTransform, ProjectivePoint, RationalFunction};

/// Whether `f` induces a bijection of the `q + 1` points of `P¹(F_q)`.
pub fn is_pr_brute(f: &RationalFunction) -> bool {
    let q = f.field().order();
    let mut seen = vec![false; q as usize + 1];
    for pt in ProjectivePoint::all(f.field()) {
        let i = f.eval(pt).index(q);
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Replace `f` by an equivalent function fixing `∞`: `f` itself if it already
/// does, otherwise `1/(f∘ψ - f(ψ(∞)))` for the first `ψ` in canonical order
/// with `ψ(∞)` not a pole.
pub fn fix_infinity(f: &RationalFunction) -> Result<RationalFunction> {
    if f.value_at_infinity().is_infinity() {
        return Ok(f.clone());
    }
    let field = f.field();
    for psi in MobiusTransform::enumerate(field) {
        let xi = psi.apply(ProjectivePoint::Infinity);
        let ProjectivePoint::Finite(v) = f.eval(xi) else {
            continue;
        };
        let g = f.compose(&psi.to_ratfun())?;
        let shifted = &g - &RationalFunction::constant(field, v);
        return shifted.inverse();
    }
    Err(Error::Unfixable)
}

/// Hermite's criterion through the closed-form power sums, falling back to
/// enumeration for the sums the closed form does not cover. Functions not
/// fixing `∞` are first moved by [`fix_infinity`].
pub fn hermite_test(f: &RationalFunction) -> Result<bool> {
    let d = f.degree();
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let g = fix_infinity(f)?;
    if g.has_pole_in_field() {
        // ∞ has a second preimage
        return Ok(false);
    }
    let field = g.field();
    let q = field.order() as u64;
    let minus_one = field.neg(Elem::ONE);
    let engine = match PowerSums::new(&g) {
        Ok(e) => Some(e),
        Err(Error::EnvelopeExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut brute: Option<Vec<Elem>> = None;
    for s in 1..q {
        let closed = match &engine {
            Some(e) => match e.sum(s) {
                Ok(v) => Some(v),
                Err(Error::FormulaOutOfRange(_)) => None,
                Err(err) => return Err(err),
            },
            None => None,
        };
        let v = match closed {
            Some(v) => v,
            None => {
                let sums = match &brute {
                    Some(b) => b,
                    None => brute.insert(power_sums_brute(&g, q - 1)?),
                };
                sums[(s - 1) as usize]
            }
        };
        let want = if s == q - 1 { minus_one } else { Elem::ZERO };
        if v != want {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
