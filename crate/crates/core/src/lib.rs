//! Power sums of rational functions over finite fields, and the permutation
//! rational functions of the projective line they detect.

pub mod carlitz;
pub mod classify;
pub mod error;
pub mod gf;
pub mod poly;
pub mod perm;
pub mod ratfun;
pub mod reproduce;
pub mod sweep;
pub mod symident;
pub mod text;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement};
pub use poly::Poly;
pub use ratfun::{MobiusTransform, ProjectivePoint, RationalFunction};
