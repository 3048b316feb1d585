//! Subfield embeddings `F_{p^d} -> F_{p^m}` for `d | m`.
//!
//! The image of the source generator is a root of the source modulus in the
//! target. Among the `d` candidate roots we take the smallest in canonical
//! element order that agrees with the embeddings already fixed for every
//! intermediate subfield, so that for canonical fields `F_a ⊂ F_b ⊂ F_c` the
//! composite `F_a -> F_b -> F_c` equals the direct `F_a -> F_c`. When `d` is
//! prime there is nothing to agree with and the rule is simply "smallest root".

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Elem, Field};
use crate::error::{Error, Result};

pub struct Embedding {
    source: Field,
    target: Field,
    map: Vec<u32>,
    inverse: HashMap<u32, u32>,
}

type Cache = Mutex<HashMap<(u64, u64), Arc<Embedding>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Embedding {
    pub fn between(source: &Field, target: &Field) -> Result<Arc<Embedding>> {
        if source.p() != target.p() || target.n() % source.n() != 0 {
            return Err(Error::NoSubfieldRelation {
                sub: source.descriptor(),
                sup: target.descriptor(),
            });
        }
        let key = (source.id(), target.id());
        if let Some(e) = cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let image = if source.n() == 1 {
            None
        } else if source == target {
            Some(Elem(source.p()))
        } else {
            Some(choose_generator_image(source, target)?)
        };
        let emb = Arc::new(Self::from_generator_image(source, target, image));
        Ok(cache()
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(emb)
            .clone())
    }

    fn from_generator_image(source: &Field, target: &Field, image: Option<Elem>) -> Embedding {
        let map: Vec<u32> = match image {
            // F_p sits inside every field of characteristic p at the same indices.
            None => (0..source.order()).collect(),
            Some(theta) => {
                let powers: Vec<Elem> = (0..source.n() as u64).map(|i| target.pow(theta, i)).collect();
                source
                    .elements()
                    .map(|a| {
                        source
                            .coeffs(a)
                            .iter()
                            .zip(&powers)
                            .fold(Elem::ZERO, |acc, (&c, &t)| {
                                target.add(acc, target.mul(Elem(c), t))
                            })
                            .0
                    })
                    .collect()
            }
        };
        let inverse = map.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();
        Embedding {
            source: source.clone(),
            target: target.clone(),
            map,
            inverse,
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        Elem(self.map[a.0 as usize])
    }

    /// The source element mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.inverse.get(&b.0).map(|&i| Elem(i))
    }
}

/// Roots of the source modulus inside the target, in canonical order.
fn modulus_roots(source: &Field, target: &Field) -> Vec<Elem> {
    let qs = source.order() as u64;
    let qt = target.order() as u64;
    let step = (qt - 1) / (qs - 1);
    let modulus = source.modulus();
    let mut roots: Vec<Elem> = (0..qs - 1)
        .map(|k| target.exp_of(k * step))
        .filter(|&x| {
            let v = modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, x), Elem(c)));
            v.is_zero()
        })
        .collect();
    roots.sort();
    roots
}

fn choose_generator_image(source: &Field, target: &Field) -> Result<Elem> {
    let roots = modulus_roots(source, target);
    debug_assert_eq!(roots.len(), source.n() as usize);
    if !(source.is_canonical() && target.is_canonical()) {
        return Ok(roots[0]);
    }
    let d = source.n();
    let mut constraints = Vec::new();
    for e in (2..d).filter(|e| d % e == 0) {
        let mid = Field::new(source.p() as u64, e)?;
        let gen = Elem(source.p());
        let into_source = Embedding::between(&mid, source)?.apply(gen);
        let into_target = Embedding::between(&mid, target)?.apply(gen);
        constraints.push((into_source, into_target));
    }
    for &theta in &roots {
        if constraints.is_empty() {
            return Ok(theta);
        }
        let candidate = Embedding::from_generator_image(source, target, Some(theta));
        if constraints
            .iter()
            .all(|&(s, t)| candidate.apply(s) == t)
        {
            return Ok(theta);
        }
    }
    unreachable!("a compatible embedding always exists for canonical fields")
}
