//! Exhaustive searches for PRs of degrees 3 and 4 in normal form, reduced to
//! equivalence classes.

mod golden;

pub use golden::golden;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;
use crate::ratfun::{
    are_equivalent, is_polynomial_equivalent, outer_normal_form, MobiusTransform, RationalFunction,
};
use crate::sweep::{horner, orbits, Injectivity, Orbit};
use crate::text::{format_ratfun, parse_ratfun};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    /// `aX + (sX + t)/Q`, `Q` irreducible quadratic; polynomial-equivalent
    /// PRs are dropped.
    #[serde(rename = "deg3-nonpoly")]
    Deg3,
    /// `aX^2 + bX + (sX + t)/Q`, `Q` irreducible quadratic.
    #[serde(rename = "form3.6")]
    Form36,
    /// `aX + Q'/Q`, `Q` irreducible cubic.
    #[serde(rename = "form3.12")]
    Form312,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Deg3 => "deg3-nonpoly",
            Form::Form36 => "form3.6",
            Form::Form312 => "form3.12",
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Form::Deg3 => 3,
            Form::Form36 | Form::Form312 => 4,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Form> {
        match s.trim().to_ascii_lowercase().as_str() {
            "deg3-nonpoly" | "deg3" | "3.2" | "3.3" | "form3.2" | "form3.3" => Ok(Form::Deg3),
            "form3.6" | "3.6" => Ok(Form::Form36),
            "form3.12" | "3.12" => Ok(Form::Form312),
            _ => Err(Error::Hypothesis(format!("unknown form {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub phi: String,
    pub psi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub representative: String,
    /// Number of PRs of the sweep in this class.
    pub members: usize,
    pub polynomial_equivalent: bool,
}

/// A listed function and the class it falls in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceMatch {
    pub text: String,
    pub is_pr: bool,
    pub class_index: Option<usize>,
    /// `reference = phi ∘ representative ∘ psi`.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub q: u64,
    pub degree: usize,
    pub form: Form,
    pub class_count: usize,
    pub class_representatives: Vec<String>,
    pub classes: Vec<ClassInfo>,
    /// Classes of all PRs found, before dropping polynomial-equivalent ones.
    pub pr_class_count: usize,
    pub prs_found: usize,
    pub search_space_size: u64,
    /// `None` when no list is on file for this form and field.
    pub references: Option<Vec<ReferenceMatch>>,
}

impl ClassificationReport {
    /// Whether the listed functions are PRs matching the classes one to one;
    /// `None` without a list.
    pub fn matches_references(&self) -> Option<bool> {
        let refs = self.references.as_ref()?;
        let mut hit = vec![false; self.class_count];
        for r in refs {
            match r.class_index {
                Some(i) if r.is_pr && !hit[i] => hit[i] = true,
                _ => return Some(false),
            }
        }
        Some(hit.iter().all(|&h| h))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Largest search space accepted.
    pub budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// An equivalence class found by [`dedupe`].
#[derive(Clone, Debug)]
pub struct EquivalenceClass {
    pub representative: RationalFunction,
    /// Indices into the input list.
    pub members: Vec<usize>,
}

/// Order used to pick representatives: shorter text first, then text.
fn text_key(f: &RationalFunction) -> (usize, String) {
    let t = format_ratfun(f);
    (t.len(), t)
}

/// Partition under equivalence. Each class is represented by its member with
/// the smallest text; classes are sorted by that key.
pub fn dedupe(functions: &[RationalFunction]) -> Result<Vec<EquivalenceClass>> {
    let Some(first) = functions.first() else {
        return Ok(Vec::new());
    };
    let field = first.field().clone();
    if functions.iter().any(|f| f.field() != &field) {
        return Err(Error::FieldMismatch);
    }
    let group = MobiusTransform::enumerate(&field);
    let mut seen: HashMap<RationalFunction, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    // functions taking fewer than three values: compared pairwise
    let mut loose: Vec<usize> = Vec::new();
    for (i, f) in functions.iter().enumerate() {
        if f.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let Some(key) = outer_normal_form(f) else {
            loose.push(i);
            continue;
        };
        if let Some(&c) = seen.get(&key) {
            classes[c].push(i);
            continue;
        }
        let c = classes.len();
        classes.push(vec![i]);
        let orbit: Vec<RationalFunction> = group
            .par_iter()
            .filter_map(|psi| outer_normal_form(&f.compose(&psi.to_ratfun()).ok()?))
            .collect();
        for g in orbit {
            seen.entry(g).or_insert(c);
        }
    }
    for i in loose {
        let mut placed = false;
        for members in classes.iter_mut() {
            if are_equivalent(&functions[i], &functions[members[0]])?.is_some() {
                members.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let mut out: Vec<EquivalenceClass> = classes
        .into_iter()
        .map(|members| {
            let rep = members
                .iter()
                .map(|&i| &functions[i])
                .min_by_key(|f| text_key(f))
                .unwrap()
                .clone();
            EquivalenceClass {
                representative: rep,
                members,
            }
        })
        .collect();
    out.sort_by_cached_key(|c| text_key(&c.representative));
    Ok(out)
}

fn inverse_table(base: &Field, den: &[Elem]) -> Vec<Elem> {
    base.elements().map(|x| base.inv(horner(base, den, x))).collect()
}

/// Parameters of a PR found by a sweep: orbit index and the coefficients.
type Hit = (usize, [Elem; 4]);

/// `A(X) + (sX + t)/Q` over every irreducible quadratic `Q`, every nonzero
/// `(s, t)` and every polynomial part in `parts`.
fn sweep_quadratic(base: &Field, orbs: &[Orbit], parts: &[[Elem; 2]], quadratic: bool) -> Vec<Hit> {
    let xs: Vec<Elem> = base.elements().collect();
    let x2: Vec<Elem> = xs.iter().map(|&x| base.mul(x, x)).collect();
    let st: Vec<(Elem, Elem)> = base
        .elements()
        .flat_map(|s| base.elements().map(move |t| (s, t)))
        .filter(|&(s, t)| !(s.is_zero() && t.is_zero()))
        .collect();
    let q = base.order();
    orbs.par_iter()
        .enumerate()
        .map_init(
            || (Injectivity::new(q), vec![Elem::ZERO; q as usize]),
            |(inj, tail), (oi, o)| {
                let inv = inverse_table(base, &o.min_poly);
                let mut hits = Vec::new();
                for &(s, t) in &st {
                    for (k, &x) in xs.iter().enumerate() {
                        tail[k] = base.mul(base.add(base.mul(s, x), t), inv[k]);
                    }
                    for &[a, b] in parts {
                        let ok = if quadratic {
                            inj.distinct((0..xs.len()).map(|k| {
                                base.add(base.add(base.mul(a, x2[k]), base.mul(b, xs[k])), tail[k])
                            }))
                        } else {
                            inj.distinct((0..xs.len()).map(|k| base.add(base.mul(a, xs[k]), tail[k])))
                        };
                        if ok {
                            hits.push((oi, [a, b, s, t]));
                        }
                    }
                }
                hits
            },
        )
        .flatten()
        .collect()
}

/// `aX + Q'/Q` over every irreducible cubic `Q`.
fn sweep_cubic(base: &Field, orbs: &[Orbit]) -> Vec<Hit> {
    let xs: Vec<Elem> = base.elements().collect();
    let q = base.order();
    orbs.par_iter()
        .enumerate()
        .map_init(
            || Injectivity::new(q),
            |inj, (oi, o)| {
                let m = &o.min_poly;
                let dm = [m[1], base.mul(base.from_int(2), m[2]), base.from_int(3)];
                let tail: Vec<Elem> = xs
                    .iter()
                    .map(|&x| base.div(horner(base, &dm, x), horner(base, m, x)))
                    .collect();
                base.nonzero_elements()
                    .filter(|&a| inj.distinct(xs.iter().zip(&tail).map(|(&x, &t)| base.add(base.mul(a, x), t))))
                    .map(|a| (oi, [a, Elem::ZERO, Elem::ZERO, Elem::ZERO]))
                    .collect::<Vec<_>>()
            },
        )
        .flatten()
        .collect()
}

fn search_space(q: u64, form: Form) -> u64 {
    let quad = q * (q - 1) / 2;
    let cubic = (q * q * q - q) / 3;
    match form {
        Form::Deg3 => (q - 1) * (q * q - 1) * quad,
        Form::Form36 => (q - 1) * q * (q * q - 1) * quad,
        Form::Form312 => (q - 1) * cubic,
    }
}

/// All PRs of a normal form over `F_q`, as rational functions in sweep order.
pub fn sweep(q: u64, form: Form, opts: &ClassifyOptions) -> Result<Vec<RationalFunction>> {
    let base = Field::from_order(q)?;
    let size = search_space(q, form);
    if size > opts.budget {
        return Err(Error::BudgetExceeded(format!(
            "{form} over GF({q}) has {size} parameter tuples, budget {}",
            opts.budget
        )));
    }
    let x = Poly::x(&base);
    match form {
        Form::Deg3 | Form::Form36 => {
            let (_, orbs) = orbits(&base, 2)?;
            let parts: Vec<[Elem; 2]> = if form == Form::Deg3 {
                base.nonzero_elements().map(|a| [a, Elem::ZERO]).collect()
            } else {
                base.nonzero_elements()
                    .flat_map(|a| base.elements().map(move |b| [a, b]))
                    .collect()
            };
            let hits = sweep_quadratic(&base, &orbs, &parts, form == Form::Form36);
            Ok(hits
                .into_iter()
                .map(|(oi, [a, b, s, t])| {
                    let den = Poly::from_coeffs(&base, orbs[oi].min_poly.clone());
                    let part = if form == Form::Form36 {
                        Poly::from_coeffs(&base, vec![Elem::ZERO, b, a])
                    } else {
                        Poly::from_coeffs(&base, vec![Elem::ZERO, a])
                    };
                    let rest = Poly::from_coeffs(&base, vec![t, s]);
                    RationalFunction::from_reduced(&(&part * &den) + &rest, den)
                })
                .collect())
        }
        Form::Form312 => {
            let (_, orbs) = orbits(&base, 3)?;
            Ok(sweep_cubic(&base, &orbs)
                .into_iter()
                .map(|(oi, [a, ..])| {
                    let den = Poly::from_coeffs(&base, orbs[oi].min_poly.clone());
                    let num = &(&x.scale(a) * &den) + &den.derivative();
                    RationalFunction::from_reduced(num, den)
                })
                .collect())
        }
    }
}

/// Sweep a normal form, test every member, and reduce the PRs found to
/// equivalence classes. Listed references, if any, are matched against the
/// classes with witnesses.
pub fn classify(q: u64, degree: usize, form: Form, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    if degree != form.degree() {
        return Err(Error::Hypothesis(format!(
            "{form} has degree {}, not {degree}",
            form.degree()
        )));
    }
    let base = Field::from_order(q)?;
    let prs = sweep(q, form, opts)?;
    let all_classes = dedupe(&prs)?;
    let pr_class_count = all_classes.len();
    let mut kept = Vec::new();
    for c in all_classes {
        let poly_eq = is_polynomial_equivalent(&c.representative)?;
        if form == Form::Deg3 && poly_eq {
            continue;
        }
        kept.push((c, poly_eq));
    }
    let classes: Vec<ClassInfo> = kept
        .iter()
        .map(|(c, poly_eq)| ClassInfo {
            representative: format_ratfun(&c.representative),
            members: c.members.len(),
            polynomial_equivalent: *poly_eq,
        })
        .collect();
    let mut references = None;
    if let Some(lines) = golden(form, q) {
        let references = references.insert(Vec::new());
        for text in lines {
            let f = parse_ratfun(&base, text)?;
            let is_pr = crate::perm::is_pr_brute(&f);
            let mut found = None;
            for (i, (c, _)) in kept.iter().enumerate() {
                if let Some(w) = are_equivalent(&f, &c.representative)? {
                    found = Some((i, w));
                    break;
                }
            }
            references.push(ReferenceMatch {
                text: format_ratfun(&f),
                is_pr,
                class_index: found.as_ref().map(|(i, _)| *i),
                witness: found.map(|(_, w)| Witness {
                    phi: w.phi.to_string(),
                    psi: w.psi.to_string(),
                }),
            });
        }
    }
    Ok(ClassificationReport {
        q,
        degree,
        form,
        class_count: classes.len(),
        class_representatives: classes.iter().map(|c| c.representative.clone()).collect(),
        classes,
        pr_class_count,
        prs_found: prs.len(),
        search_space_size: search_space(q, form),
        references,
    })
}

#[cfg(test)]
mod tests;
