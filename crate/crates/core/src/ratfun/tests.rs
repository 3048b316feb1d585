use super::*;
use crate::text::{parse_poly, parse_ratfun};
use proptest::prelude::*;

fn field(q: u64) -> Field {
    Field::from_order(q).unwrap()
}

fn rf(f: &Field, s: &str) -> RationalFunction {
    parse_ratfun(f, s).unwrap()
}

fn fin(x: Elem) -> ProjectivePoint {
    ProjectivePoint::Finite(x)
}

#[test]
fn normalize_examples() {
    let f2 = field(2);
    let r = RationalFunction::new(parse_poly(&f2, "x^2+x").unwrap(), parse_poly(&f2, "x").unwrap()).unwrap();
    assert_eq!(r, rf(&f2, "x+1"));
    assert!(r.is_polynomial());

    let f5 = field(5);
    let r = RationalFunction::new(parse_poly(&f5, "2*x").unwrap(), parse_poly(&f5, "2").unwrap()).unwrap();
    assert_eq!(r, rf(&f5, "x"));

    let num = parse_poly(&f2, "x^4+x").unwrap();
    let den = parse_poly(&f2, "x^2+x+1").unwrap();
    // x^4 + x = x (x + 1)(x^2 + x + 1): not coprime after all
    let r = RationalFunction::new(num.clone(), den.clone()).unwrap();
    assert_eq!(r, rf(&f2, "x^2+x"));
    let num = parse_poly(&f2, "x^4+x+1").unwrap();
    let r = RationalFunction::new(num.clone(), den.clone()).unwrap();
    assert_eq!((r.num(), r.den()), (&num, &den));

    let z = Poly::zero(&f2);
    assert_eq!(RationalFunction::new(z.clone(), z.clone()).unwrap_err(), Error::ZeroOverZero);
    assert_eq!(RationalFunction::new(num, z).unwrap_err(), Error::DivisionByZero);
}

#[test]
fn evaluation_examples() {
    let f2 = field(2);
    let f = rf(&f2, "x + 1/(x^2+x+1)");
    assert_eq!(f.eval(fin(f2.zero())), fin(f2.one()));
    assert_eq!(f.eval(fin(f2.one())), fin(f2.zero()));
    assert_eq!(f.eval(ProjectivePoint::Infinity), ProjectivePoint::Infinity);

    let inv = rf(&f2, "1/x");
    assert_eq!(inv.eval(fin(f2.zero())), ProjectivePoint::Infinity);
    assert_eq!(inv.eval(ProjectivePoint::Infinity), fin(f2.zero()));

    let g = rf(&f2, "(x^2+1)/(x^2+x+1)");
    assert_eq!(g.eval(ProjectivePoint::Infinity), fin(f2.one()));
}

#[test]
fn composition_examples() {
    let f8 = field(8);
    let f = rf(&f8, "x^2 + u/(x^3+x+1)");
    assert_eq!(f.compose(&RationalFunction::x(&f8)).unwrap(), f);
    let inv = rf(&f8, "1/x");
    assert_eq!(inv.compose(&inv).unwrap(), RationalFunction::x(&f8));
    assert_eq!(f.compose(&rf(&field(4), "x")).unwrap_err(), Error::FieldMismatch);
}

#[test]
fn translation_between_theorem_instances() {
    // r1 + r1^q = 1 = r2 + r2^q with u = r1 - r2 gives f_{r1}(X + u) = f_{r2}(X) + u
    let q = 8u64;
    let base = field(q);
    let ext = field(q * q);
    let emb = crate::gf::Embedding::between(&base, &ext).unwrap();
    let rs: Vec<Elem> = ext
        .elements()
        .filter(|&r| !ext.in_subfield(r, base.n()) && ext.add(r, ext.frobenius(r, 1, base.n()).unwrap()) == Elem::ONE)
        .collect();
    assert_eq!(rs.len(), q as usize);
    let f_of = |r: Elem| {
        let rq = ext.frobenius(r, 1, base.n()).unwrap();
        let x = RationalFunction::x(&ext);
        let t1 = RationalFunction::new(Poly::one(&ext), Poly::linear(&ext, r)).unwrap();
        let t2 = RationalFunction::new(Poly::one(&ext), Poly::linear(&ext, rq)).unwrap();
        (&(&x + &t1) + &t2).restrict(&base).unwrap()
    };
    for &r1 in &rs[..3] {
        for &r2 in &rs[3..6] {
            let u = emb.preimage(ext.sub(r1, r2)).unwrap();
            let shift = RationalFunction::from_poly(Poly::from_coeffs(&base, vec![u, Elem::ONE]));
            let lhs = f_of(r1).compose(&shift).unwrap();
            let rhs = &f_of(r2) + &RationalFunction::constant(&base, u);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pgl_enumeration() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        let all = MobiusTransform::enumerate(&f);
        assert_eq!(all.len() as u64, q * q * q - q);
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        // closed under composition and inverse, spot-checked
        for a in all.iter().step_by(7) {
            assert!(set.contains(&a.inverse()));
            assert!(a.compose(&a.inverse()).is_identity());
            for b in all.iter().step_by(11) {
                let c = a.compose(b);
                assert!(set.contains(&c));
                for x in ProjectivePoint::all(&f) {
                    assert_eq!(c.apply(x), a.apply(b.apply(x)));
                }
            }
        }
        // sorted lexicographically by entry indices
        let keys: Vec<[u32; 4]> = all.iter().map(|m| m.entries().map(|e| e.index())).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn three_point_normalizer() {
    let f = field(5);
    let pts: Vec<ProjectivePoint> = ProjectivePoint::all(&f).collect();
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                let m = MobiusTransform::to_zero_one_infinity(&f, a, b, c);
                if a == b || b == c || a == c {
                    assert!(m.is_none());
                    continue;
                }
                let m = m.unwrap();
                assert_eq!(m.apply(a), fin(f.zero()));
                assert_eq!(m.apply(b), fin(f.one()));
                assert_eq!(m.apply(c), ProjectivePoint::Infinity);
            }
        }
    }
}

#[test]
fn equivalence_examples() {
    let f2 = field(2);
    let a = rf(&f2, "x^2 + 1/(x^2+x+1)");
    let b = rf(&f2, "x^2 + x + x/(x^2+x+1)");
    let w = are_equivalent(&a, &a).unwrap().unwrap();
    assert!(w.phi.is_identity() && w.psi.is_identity());
    assert!(are_equivalent(&a, &b).unwrap().is_none());

    // r1^2 = 2, r2^2 = 3 over F_5: both nonsquares
    let f5 = field(5);
    let f1 = rf(&f5, "3*x + 2*x/(x^2-2)");
    let f2_ = rf(&f5, "(-1/12)*x + 2*x/(x^2-3)");
    let w = are_equivalent(&f1, &f2_).unwrap().unwrap();
    let back = equiv::post_compose(&w.phi, &equiv::pre_compose(&f2_, &w.psi));
    assert_eq!(back, f1);
}

#[test]
fn equivalence_with_degenerate_values() {
    // x^3 over F_7 takes only three values on the cube classes plus 0 and ∞,
    // x^6 takes 0, 1 and ∞ only: the double loop handles it
    let f7 = field(7);
    let a = rf(&f7, "x^6");
    let b = rf(&f7, "3*(x+1)^6");
    let w = are_equivalent(&a, &b).unwrap().unwrap();
    let back = equiv::post_compose(&w.phi, &equiv::pre_compose(&b, &w.psi));
    assert_eq!(back, a);
    assert!(are_equivalent(&a, &rf(&f7, "x^6 + x")).unwrap().is_none());
}

#[test]
fn polynomial_equivalence_examples() {
    let f2 = field(2);
    assert!(is_polynomial_equivalent(&rf(&f2, "x^3 + x")).unwrap());
    // numerator (x + 1)^3: 1 is the only preimage of 0, so 1/f(1/x + 1) = x^3 + x^2 + x
    let t = rf(&f2, "x + 1/(x^2+x+1)");
    assert!(is_polynomial_equivalent(&t).unwrap());
    let g = t.inverse().unwrap().compose(&rf(&f2, "1/x + 1")).unwrap();
    assert_eq!(g, rf(&f2, "x^3 + x^2 + x"));
    assert!(!is_polynomial_equivalent(&rf(&field(4), "x + 1/(x^2+x+u)")).unwrap());
    assert!(!is_polynomial_equivalent(&rf(&f2, "x^2 + 1/(x^2+x+1)")).unwrap());
    // -x^3 / (r^2 (x^2 - r^2)) with r^2 = 2, a nonsquare of F_3
    let f3 = field(3);
    let g = rf(&f3, "-x^3/(2*(x^2-2))");
    assert!(is_polynomial_equivalent(&g).unwrap());
    assert!(is_polynomial_equivalent(&RationalFunction::one(&f3)).is_err());
}

#[test]
fn normalization_preserves_the_map() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = field(q);
        let g = f.elements().nth(1).unwrap();
        let num = Poly::from_coeffs(&f, vec![g, Elem::ONE, Elem::ZERO, Elem::ONE]);
        let den = Poly::from_coeffs(&f, vec![g, Elem::ONE]);
        let common = Poly::from_coeffs(&f, vec![Elem::ONE, g, Elem::ONE]);
        let raw_num = &num * &common;
        let raw_den = &den * &common;
        let r = RationalFunction::new(raw_num.clone(), raw_den.clone()).unwrap();
        for x in f.elements() {
            let (n, d) = (raw_num.eval(x), raw_den.eval(x));
            if n.is_zero() && d.is_zero() {
                continue;
            }
            let want = if d.is_zero() { ProjectivePoint::Infinity } else { fin(f.div(n, d)) };
            assert_eq!(r.eval(fin(x)), want);
        }
    }
}

#[test]
fn text_round_trip() {
    let f9 = field(9);
    for s in ["x", "2*x^2 + u", "(u+1)*x^4 + x + u/(x^2+u*x+1)", "1/(x^3 + 2*x + 1)", "(x + 1)/(x^2 + u)"] {
        let f = rf(&f9, s);
        assert_eq!(rf(&f9, &f.to_string()), f);
        assert_eq!(rf(&f9, &f.to_string()).to_string(), f.to_string());
    }
}

fn arb_ratfun(q: u64) -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(0..q, 1..=4), prop::collection::vec(0..q, 1..=3)).prop_filter_map("nonzero", move |(n, d)| {
        let f = field(q);
        let n: Vec<u32> = n.into_iter().map(|c| c as u32).collect();
        let mut d: Vec<u32> = d.into_iter().map(|c| c as u32).collect();
        d.push(1);
        let r = RationalFunction::new(Poly::from_indices(&f, &n).ok()?, Poly::from_indices(&f, &d).ok()?).ok()?;
        (r.degree() >= 1).then_some(r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_agrees_pointwise(f in arb_ratfun(7), g in arb_ratfun(7)) {
        let h = f.compose(&g).unwrap();
        for x in ProjectivePoint::all(f.field()) {
            prop_assert_eq!(h.eval(x), f.eval(g.eval(x)));
        }
    }

    #[test]
    fn compose_is_associative(f in arb_ratfun(5), g in arb_ratfun(5), h in arb_ratfun(5)) {
        let a = f.compose(&g).unwrap().compose(&h).unwrap();
        let b = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mobius_maps_preserve_degree_and_pr(f in arb_ratfun(8), i in 0usize..504, j in 0usize..504) {
        let group = MobiusTransform::enumerate(f.field());
        let (phi, psi) = (&group[i], &group[j]);
        let g = equiv::post_compose(phi, &equiv::pre_compose(&f, psi));
        prop_assert_eq!(g.degree(), f.degree());
        let bij = |h: &RationalFunction| {
            let mut v = h.value_table();
            v.sort();
            v.dedup();
            v.len() == 9
        };
        prop_assert_eq!(bij(&f), bij(&g));
        let w = are_equivalent(&g, &f).unwrap().unwrap();
        prop_assert_eq!(equiv::post_compose(&w.phi, &equiv::pre_compose(&f, &w.psi)), g.clone());
        // symmetry
        prop_assert!(are_equivalent(&f, &g).unwrap().is_some());
    }
}
