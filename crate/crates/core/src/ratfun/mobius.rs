use std::fmt;

use super::{ProjectivePoint, RationalFunction};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

/// `(aX + b)/(cX + d)` with `ad - bc != 0`, scaled so the first nonzero entry
/// of `(a, b, c, d)` is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusTransform {
    field: Field,
    m: [Elem; 4],
}

impl MobiusTransform {
    pub fn new(field: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<MobiusTransform> {
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(Error::Hypothesis("singular Mobius transform".into()));
        }
        let lead = [a, b, c, d].into_iter().find(|x| !x.is_zero()).unwrap();
        let s = field.inv(lead);
        Ok(MobiusTransform {
            field: field.clone(),
            m: [a, b, c, d].map(|x| field.mul(x, s)),
        })
    }

    pub fn identity(field: &Field) -> MobiusTransform {
        MobiusTransform {
            field: field.clone(),
            m: [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> [Elem; 4] {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE]
    }

    pub fn apply(&self, pt: ProjectivePoint) -> ProjectivePoint {
        let f = &self.field;
        let [a, b, c, d] = self.m;
        match pt {
            ProjectivePoint::Infinity => {
                if c.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(f.div(a, c))
                }
            }
            ProjectivePoint::Finite(x) => {
                let den = f.add(f.mul(c, x), d);
                if den.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(f.div(f.add(f.mul(a, x), b), den))
                }
            }
        }
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        let f = &self.field;
        let [a, b, c, d] = self.m;
        let num = Poly::from_coeffs(f, vec![b, a]);
        let den = Poly::from_coeffs(f, vec![d, c]);
        RationalFunction::new(num, den).expect("nonsingular")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusTransform) -> MobiusTransform {
        let f = &self.field;
        let [a, b, c, d] = self.m;
        let [e, g, h, k] = other.m;
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| f.add(f.mul(x, y), f.mul(z, w));
        MobiusTransform::new(
            f,
            dot(a, e, b, h),
            dot(a, g, b, k),
            dot(c, e, d, h),
            dot(c, g, d, k),
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> MobiusTransform {
        let f = &self.field;
        let [a, b, c, d] = self.m;
        MobiusTransform::new(f, d, f.neg(b), f.neg(c), a).expect("nonsingular")
    }

    /// The unique transform sending `z0, z1, z2` (distinct) to `0, 1, ∞`.
    pub fn to_zero_one_infinity(
        field: &Field,
        z0: ProjectivePoint,
        z1: ProjectivePoint,
        z2: ProjectivePoint,
    ) -> Option<MobiusTransform> {
        use ProjectivePoint::*;
        if z0 == z1 || z1 == z2 || z0 == z2 {
            return None;
        }
        let f = field;
        // cross ratio (X - z0)(z1 - z2) / ((X - z2)(z1 - z0)) with ∞ entries dropped
        let (a, b, c, d) = match (z0, z1, z2) {
            (Finite(x0), Finite(x1), Finite(x2)) => {
                let s = f.sub(x1, x2);
                let t = f.sub(x1, x0);
                (s, f.neg(f.mul(s, x0)), t, f.neg(f.mul(t, x2)))
            }
            (Infinity, Finite(x1), Finite(x2)) => (Elem::ZERO, f.sub(x1, x2), Elem::ONE, f.neg(x2)),
            (Finite(x0), Infinity, Finite(x2)) => (Elem::ONE, f.neg(x0), Elem::ONE, f.neg(x2)),
            (Finite(x0), Finite(x1), Infinity) => (Elem::ONE, f.neg(x0), Elem::ZERO, f.sub(x1, x0)),
            _ => unreachable!(),
        };
        MobiusTransform::new(f, a, b, c, d).ok()
    }

    /// All `q^3 - q` elements of `PGL(2, q)` in canonical order: lexicographic
    /// in `(a, b, c, d)` by element index.
    pub fn enumerate(field: &Field) -> Vec<MobiusTransform> {
        let q = field.order() as usize;
        let mut out = Vec::with_capacity(q * q * q - q);
        let f = field;
        for c in field.nonzero_elements() {
            for d in field.elements() {
                out.push(MobiusTransform {
                    field: f.clone(),
                    m: [Elem::ZERO, Elem::ONE, c, d],
                });
            }
        }
        for b in field.elements() {
            for c in field.elements() {
                let bc = f.mul(b, c);
                for d in field.elements() {
                    if d != bc {
                        out.push(MobiusTransform {
                            field: f.clone(),
                            m: [Elem::ONE, b, c, d],
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius({})", self)
    }
}

impl fmt::Display for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_ratfun(&self.to_ratfun()))
    }
}
