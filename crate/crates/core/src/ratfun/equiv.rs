//! Equivalence `f = φ ∘ g ∘ ψ` under degree-one maps on both sides.
//!
//! For each inner map ψ the outer map is pinned down by requiring the values
//! at three fixed points to go to `0, 1, ∞`, so one pass over `PGL(2, q)`
//! suffices whenever `f` takes three distinct values.

use super::{MobiusTransform, ProjectivePoint, RationalFunction};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Witnesses for `f = phi ∘ g ∘ psi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub phi: MobiusTransform,
    pub psi: MobiusTransform,
}

impl EquivalenceWitness {
    /// `phi ∘ g ∘ psi`.
    pub fn apply(&self, g: &RationalFunction) -> RationalFunction {
        post_compose(&self.phi, &pre_compose(g, &self.psi))
    }
}

/// `m ∘ f`.
pub(crate) fn post_compose(m: &MobiusTransform, f: &RationalFunction) -> RationalFunction {
    let [a, b, c, d] = m.entries();
    let (p, q) = (f.num(), f.den());
    let num = &p.scale(a) + &q.scale(b);
    let den = &p.scale(c) + &q.scale(d);
    RationalFunction::new(num, den).expect("degree-one map of a nonconstant function")
}

/// `f ∘ m`.
pub(crate) fn pre_compose(f: &RationalFunction, m: &MobiusTransform) -> RationalFunction {
    f.compose(&m.to_ratfun()).expect("same field")
}

/// `σ ∘ f` where `σ` sends the values of `f` at `points` to `0, 1, ∞`; `None`
/// when those values are not distinct.
pub fn normalize_outer(f: &RationalFunction, points: [ProjectivePoint; 3]) -> Option<RationalFunction> {
    let sigma = outer_normalizer(f, points)?;
    Some(post_compose(&sigma, f))
}

/// `σ ∘ f` for the `σ` sending the values at [`separating_points`] to
/// `0, 1, ∞`. Equal for `f` and `φ ∘ f` for every degree-one `φ`; `None`
/// when `f` takes fewer than three values.
pub fn outer_normal_form(f: &RationalFunction) -> Option<RationalFunction> {
    normalize_outer(f, separating_points(f)?)
}

fn outer_normalizer(f: &RationalFunction, points: [ProjectivePoint; 3]) -> Option<MobiusTransform> {
    let [v0, v1, v2] = points.map(|p| f.eval(p));
    MobiusTransform::to_zero_one_infinity(f.field(), v0, v1, v2)
}

fn zero_one_inf(f: &RationalFunction) -> [ProjectivePoint; 3] {
    let field = f.field();
    [
        ProjectivePoint::Finite(field.zero()),
        ProjectivePoint::Finite(field.one()),
        ProjectivePoint::Infinity,
    ]
}

/// Three points with pairwise distinct values: `0, 1, ∞` if possible,
/// otherwise the first such triple found greedily in point order.
fn separating_points(f: &RationalFunction) -> Option<[ProjectivePoint; 3]> {
    let preferred = zero_one_inf(f);
    if outer_normalizer(f, preferred).is_some() {
        return Some(preferred);
    }
    let mut chosen: Vec<(ProjectivePoint, ProjectivePoint)> = Vec::new();
    for pt in ProjectivePoint::all(f.field()) {
        let v = f.eval(pt);
        if chosen.iter().all(|&(_, w)| w != v) {
            chosen.push((pt, v));
            if chosen.len() == 3 {
                return Some([chosen[0].0, chosen[1].0, chosen[2].0]);
            }
        }
    }
    None
}

/// Search for `φ, ψ` with `f = φ ∘ g ∘ ψ`, returning the witness with the
/// first `ψ` in canonical `PGL(2, q)` order.
pub fn are_equivalent(f: &RationalFunction, g: &RationalFunction) -> Result<Option<EquivalenceWitness>> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if f.degree() != g.degree() {
        return Ok(None);
    }
    let field = f.field();
    let q = field.order();
    let g_table = g.value_table();
    let f_table = f.value_table();
    let group = MobiusTransform::enumerate(field);

    let Some(points) = separating_points(f) else {
        return Ok(double_loop(f, g, &f_table, &g_table, &group));
    };
    let sigma_f = outer_normalizer(f, points).unwrap();
    let target = post_compose(&sigma_f, f);
    let target_table: Vec<ProjectivePoint> = f_table.iter().map(|&v| sigma_f.apply(v)).collect();
    let sigma_f_inv = sigma_f.inverse();

    for psi in &group {
        let [v0, v1, v2] = points.map(|p| g_table[psi.apply(p).index(q)]);
        let Some(sigma) = MobiusTransform::to_zero_one_infinity(field, v0, v1, v2) else {
            continue;
        };
        let matches = ProjectivePoint::all(field)
            .zip(&target_table)
            .all(|(x, &t)| sigma.apply(g_table[psi.apply(x).index(q)]) == t);
        if !matches {
            continue;
        }
        let h = post_compose(&sigma, &pre_compose(g, psi));
        if h == target {
            return Ok(Some(EquivalenceWitness {
                phi: sigma_f_inv.compose(&sigma),
                psi: psi.clone(),
            }));
        }
    }
    Ok(None)
}

fn double_loop(
    f: &RationalFunction,
    g: &RationalFunction,
    f_table: &[ProjectivePoint],
    g_table: &[ProjectivePoint],
    group: &[MobiusTransform],
) -> Option<EquivalenceWitness> {
    let field = f.field();
    let q = field.order();
    for psi in group {
        let inner: Vec<ProjectivePoint> = ProjectivePoint::all(field)
            .map(|x| g_table[psi.apply(x).index(q)])
            .collect();
        let mut gpsi = None;
        for phi in group {
            if !inner.iter().zip(f_table).all(|(&v, &t)| phi.apply(v) == t) {
                continue;
            }
            let gp = gpsi.get_or_insert_with(|| pre_compose(g, psi));
            if &post_compose(phi, gp) == f {
                return Some(EquivalenceWitness {
                    phi: phi.clone(),
                    psi: psi.clone(),
                });
            }
        }
    }
    None
}

/// A class invariant: the smallest `σ ∘ f ∘ ψ` over all `ψ` for which `f ∘ ψ`
/// separates `0, 1, ∞`. Two functions taking three distinct values on every
/// such triple are equivalent iff their keys agree.
pub fn class_key(f: &RationalFunction) -> Option<RationalFunction> {
    let field = f.field();
    let q = field.order();
    let table = f.value_table();
    let points = zero_one_inf(f);
    MobiusTransform::enumerate(field)
        .iter()
        .filter_map(|psi| {
            let [v0, v1, v2] = points.map(|p| table[psi.apply(p).index(q)]);
            let sigma = MobiusTransform::to_zero_one_infinity(field, v0, v1, v2)?;
            Some(post_compose(&sigma, &pre_compose(f, psi)))
        })
        .min()
}

/// Whether `φ ∘ f ∘ ψ` is a polynomial for some degree-one `φ, ψ`: some value
/// `η` has a single `F_q`-rational preimage of full multiplicity `deg f`.
pub fn is_polynomial_equivalent(f: &RationalFunction) -> Result<bool> {
    let d = f.degree();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let field = f.field();
    let totally_ramified = |h: &Poly| -> bool {
        // the fibre over η: roots of h plus ∞ with multiplicity d - deg h
        match h.degree() {
            None => false,
            Some(0) => true,
            Some(k) if k < d => false,
            Some(_) => h.roots().iter().any(|&(_, m)| m == d),
        }
    };
    if totally_ramified(f.den()) {
        return Ok(true);
    }
    for eta in field.elements() {
        let h = f.num() - &f.den().scale(eta);
        if totally_ramified(&h) {
            return Ok(true);
        }
    }
    Ok(false)
}
