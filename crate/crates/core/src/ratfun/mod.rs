//! Rational functions over `F_q` viewed as maps of the projective line.

mod equiv;
mod mobius;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use equiv::{
    are_equivalent, class_key, is_polynomial_equivalent, normalize_outer, outer_normal_form,
    EquivalenceWitness,
};
pub use mobius::MobiusTransform;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

/// A point of `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectivePoint {
    Finite(Elem),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(self) -> Option<Elem> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        self == ProjectivePoint::Infinity
    }

    /// Dense index in `0..=q`: finite points by element index, `∞` last.
    pub fn index(self, q: u32) -> usize {
        match self {
            ProjectivePoint::Finite(x) => x.index() as usize,
            ProjectivePoint::Infinity => q as usize,
        }
    }

    /// All `q + 1` points, finite ones in canonical order then `∞`.
    pub fn all(field: &Field) -> impl Iterator<Item = ProjectivePoint> {
        field
            .elements()
            .map(ProjectivePoint::Finite)
            .chain(std::iter::once(ProjectivePoint::Infinity))
    }
}

/// A reduced quotient `P/Q` with `Q` monic and `gcd(P, Q) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Reduce `num/den`: cancel the gcd and make the denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(if num.is_zero() {
                Error::ZeroOverZero
            } else {
                Error::DivisionByZero
            });
        }
        if num.is_zero() {
            let field = num.field().clone();
            return Ok(RationalFunction {
                num,
                den: Poly::one(&field),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.field().inv(den.leading());
        Ok(RationalFunction {
            num: num.scale(lc),
            den: den.scale(lc),
        })
    }

    /// Build from parts already known to be reduced with monic denominator.
    pub(crate) fn from_reduced(num: Poly, den: Poly) -> RationalFunction {
        debug_assert!(den.is_monic());
        debug_assert!(num.is_zero() || num.gcd(&den).is_one());
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let one = Poly::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(field: &Field, c: Elem) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(field, c))
    }

    pub fn zero(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(field))
    }

    pub fn x(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// `max(deg P, deg Q)`; the zero function has degree 0.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at a point of `F_q`; `None` stands for `∞`.
    #[inline]
    pub fn eval_affine(&self, x: Elem) -> Option<Elem> {
        let f = self.field();
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(f.div(self.num.eval(x), d))
    }

    pub fn eval(&self, pt: ProjectivePoint) -> ProjectivePoint {
        match pt {
            ProjectivePoint::Finite(x) => match self.eval_affine(x) {
                Some(y) => ProjectivePoint::Finite(y),
                None => ProjectivePoint::Infinity,
            },
            ProjectivePoint::Infinity => self.value_at_infinity(),
        }
    }

    pub fn value_at_infinity(&self) -> ProjectivePoint {
        let dp = self.num.degree();
        let dq = self.den.deg0();
        match dp {
            None => ProjectivePoint::Finite(Elem::ZERO),
            Some(dp) => match dp.cmp(&dq) {
                Ordering::Greater => ProjectivePoint::Infinity,
                Ordering::Less => ProjectivePoint::Finite(Elem::ZERO),
                Ordering::Equal => ProjectivePoint::Finite(
                    self.field().div(self.num.leading(), self.den.leading()),
                ),
            },
        }
    }

    /// Values at all points of `P^1(F_q)` in [`ProjectivePoint::all`] order.
    pub fn value_table(&self) -> Vec<ProjectivePoint> {
        ProjectivePoint::all(self.field()).map(|p| self.eval(p)).collect()
    }

    /// Whether some point of `F_q` is a pole.
    pub fn has_pole_in_field(&self) -> bool {
        self.den.has_root_in_field()
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn inverse(&self) -> Result<RationalFunction> {
        RationalFunction::one(self.field()).checked_div(self)
    }

    pub fn pow(&self, e: u64) -> RationalFunction {
        // powers of coprime polynomials stay coprime
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: Elem) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero(self.field());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RationalFunction) -> Result<RationalFunction> {
        if self.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        let d = self.degree();
        let (a, b) = (&g.num, &g.den);
        // P(A/B) B^d and Q(A/B) B^d
        let mut a_pows = vec![Poly::one(self.field())];
        let mut b_pows = vec![Poly::one(self.field())];
        for i in 1..=d {
            a_pows.push(&a_pows[i - 1] * a);
            b_pows.push(&b_pows[i - 1] * b);
        }
        let homog = |p: &Poly| {
            p.coeffs()
                .iter()
                .enumerate()
                .fold(Poly::zero(self.field()), |acc, (i, &c)| {
                    if c.is_zero() {
                        return acc;
                    }
                    &acc + &(&a_pows[i] * &b_pows[d - i]).scale(c)
                })
        };
        RationalFunction::new(homog(&self.num), homog(&self.den))
    }

    /// Same function with coefficients viewed in the extension `target`.
    pub fn embed(&self, target: &Field) -> Result<RationalFunction> {
        Ok(RationalFunction {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    /// Same function over a subfield containing all its coefficients.
    pub fn restrict(&self, sub: &Field) -> Result<RationalFunction> {
        Ok(RationalFunction {
            num: self.num.restrict(sub)?,
            den: self.den.restrict(sub)?,
        })
    }

    fn sort_key(&self) -> (usize, usize, Vec<u32>, Vec<u32>) {
        (
            self.degree(),
            self.den.deg0(),
            self.num.coeffs().iter().rev().map(|c| c.index()).collect(),
            self.den.coeffs().iter().rev().map(|c| c.index()).collect(),
        )
    }
}

/// A total order used for canonical choices: by degree, then denominator
/// degree, then coefficient indices from the top.
impl Ord for RationalFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for RationalFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_ratfun(self))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field())
    }
}

#[cfg(test)]
mod tests;
