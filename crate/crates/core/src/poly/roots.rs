//! Root finding over the coefficient field.

use super::Poly;
use crate::gf::Elem;

/// Fields up to this size are scanned element by element.
const SCAN_LIMIT: u32 = 1 << 16;

pub(super) fn roots(f: &Poly) -> Vec<(Elem, usize)> {
    let field = f.field().clone();
    if f.is_constant() {
        return Vec::new();
    }
    let mut found = if field.order() <= SCAN_LIMIT {
        field.elements().filter(|&x| f.eval(x).is_zero()).collect()
    } else {
        // product of the distinct linear factors: gcd(f, X^q - X)
        let m = f.monic();
        let xq = Poly::x(&field).pow_mod(field.order() as u64, &m);
        let h = (&xq - &Poly::x(&field)).gcd(&m);
        let mut out = Vec::new();
        split(&h, &mut out);
        out
    };
    found.sort();
    found
        .into_iter()
        .map(|r| (r, f.root_multiplicity(r)))
        .collect()
}

/// Cantor–Zassenhaus equal-degree splitting of a squarefree product of
/// distinct linear factors.
fn split(h: &Poly, out: &mut Vec<Elem>) {
    let field = h.field().clone();
    match h.degree() {
        None | Some(0) => return,
        Some(1) => {
            let m = h.monic();
            out.push(field.neg(m.coeff(0)));
            return;
        }
        _ => {}
    }
    let q = field.order() as u64;
    for delta in field.elements() {
        let w = if field.p() == 2 {
            // absolute trace of delta*X
            let t = Poly::from_coeffs(&field, vec![Elem::ZERO, delta]).rem(h);
            let mut acc = t.clone();
            let mut cur = t;
            for _ in 1..field.n() {
                cur = cur.mul_mod(&cur, h);
                acc = &acc + &cur;
            }
            acc
        } else {
            let t = Poly::from_coeffs(&field, vec![delta, Elem::ONE]);
            &t.pow_mod((q - 1) / 2, h) - &Poly::one(&field)
        };
        let d = w.gcd(h);
        let dd = d.deg0();
        if dd > 0 && dd < h.deg0() {
            let rest = h.div_exact(&d).expect("gcd divides");
            split(&d, out);
            split(&rest, out);
            return;
        }
    }
    unreachable!("distinct roots are always separated by some shift");
}
