use super::*;
use crate::text::parse_ratfun;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u64) -> Field {
    Field::from_order(q).unwrap()
}

fn rf(f: &Field, s: &str) -> RationalFunction {
    parse_ratfun(f, s).unwrap()
}

#[test]
fn identity_small_cases() {
    assert!(carlitz_identity_check(2, 1).unwrap());
    assert!(carlitz_identity_check(5, 3).unwrap());
    assert_eq!(
        carlitz_identity_check(5, 6).unwrap_err(),
        Error::KOutOfRange { k: 6, q: 5 }
    );
    assert!(carlitz_identity_check(5, 0).is_err());
}

#[test]
fn identity_fails_past_range() {
    // k = q + 1 is outside the identity; check it is actually false somewhere
    let f = field(3);
    let mut lhs = RationalFunction::zero(&f);
    for x in f.elements() {
        let t = RationalFunction::new(
            Poly::constant(&f, f.one()),
            (&Poly::constant(&f, x) - &Poly::x(&f)).pow(4),
        )
        .unwrap();
        lhs = &lhs + &t;
    }
    let xq = &Poly::monomial(&f, f.one(), 3) - &Poly::x(&f);
    let rhs = RationalFunction::new(Poly::one(&f), xq.pow(4)).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn decomposition_of_inverse_quadratic() {
    let f2 = field(2);
    let d = partial_fractions(&rf(&f2, "1/(x^2+x+1)"), 1).unwrap();
    assert_eq!(d.ext_field, field(4));
    assert!(d.poly_part.is_empty());
    let u = d.ext_field.generator().unwrap();
    let roots: Vec<Elem> = d.pole_terms.iter().map(|t| t.root).collect();
    assert_eq!(roots, vec![u, d.ext_field.add(u, Elem::ONE)]);
    assert!(d.pole_terms.iter().all(|t| t.order == 1 && t.coeff == Elem::ONE));
    assert_eq!(d.recombine().unwrap(), rf(&field(4), "1/(x^2+x+1)"));
}

#[test]
fn decomposition_of_polynomial() {
    let f = field(7);
    let d = partial_fractions(&rf(&f, "x"), 3).unwrap();
    assert_eq!(d.poly_part, vec![Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]);
    assert!(d.pole_terms.is_empty());
}

#[test]
fn decomposition_errors() {
    let f = field(5);
    assert_eq!(partial_fractions(&rf(&f, "1/x"), 1).unwrap_err(), Error::PoleInBaseField);
    assert_eq!(partial_fractions(&rf(&f, "x"), 0).unwrap_err(), Error::ZeroExponent);
    assert_eq!(power_sum_brute(&rf(&f, "1/(x-2)"), 1).unwrap_err(), Error::PoleInBaseField);
}

/// The cube of `X + 1/(X - r1) + 1/(X - r2)` in characteristic 2, term by term.
#[test]
fn cube_expansion_at_q8() {
    let f8 = field(8);
    let f64 = field(64);
    for r in f64.elements() {
        if f64.in_subfield(r, 3) {
            continue;
        }
        let r1 = r;
        let r2 = f64.frobenius(r, 1, 3).unwrap();
        let sum_r = f64.add(r1, r2);
        let x = RationalFunction::x(&f64);
        let t1 = RationalFunction::new(Poly::one(&f64), Poly::linear(&f64, r1)).unwrap();
        let t2 = RationalFunction::new(Poly::one(&f64), Poly::linear(&f64, r2)).unwrap();
        let f = (&(&x + &t1) + &t2).restrict(&f8).unwrap();
        let d = partial_fractions(&f, 3).unwrap();
        assert_eq!(d.ext_field, f64);
        let emb = Embedding::between(&f8, &f64).unwrap();
        let s = emb.preimage(sum_r).unwrap();
        assert_eq!(d.poly_part, vec![s, f8.zero(), f8.zero(), f8.one()]);
        let one = f64.one();
        let inv_s = f64.inv(sum_r);
        let want = |ra: Elem, rb: Elem| {
            vec![
                (ra, 1, f64.add(one, f64.mul(ra, ra))),
                (
                    ra,
                    2,
                    f64.mul(f64.add(f64.add(one, f64.mul(ra, rb)), f64.mul(ra, ra)), inv_s),
                ),
                (ra, 3, one),
            ]
        };
        let mut expected: Vec<PoleTerm> = want(r1, r2)
            .into_iter()
            .chain(want(r2, r1))
            .map(|(root, order, coeff)| PoleTerm { root, order, coeff })
            .collect();
        expected.sort_by_key(|t| (t.root, t.order));
        let mut got = d.pole_terms.clone();
        got.sort_by_key(|t| (t.root, t.order));
        assert_eq!(got, expected);
        assert_eq!(d.recombine().unwrap(), f.embed(&f64).unwrap().pow(3));
    }
}

#[test]
fn closed_sum_examples() {
    let f5 = field(5);
    assert_eq!(power_sum_closed(&rf(&f5, "x"), 4).unwrap(), f5.from_int(-1));
    assert_eq!(power_sum_brute(&rf(&f5, "x"), 1).unwrap(), Elem::ZERO);
    assert_eq!(power_sum_closed(&rf(&f5, "x"), 0).unwrap_err(), Error::ZeroExponent);
}

#[test]
fn correction_term_fires_at_q2() {
    // X + b1/(X - r1) + b2/(X - r2) over F_2 with b in F_4
    let f2 = field(2);
    let f4 = field(4);
    let u = f4.generator().unwrap();
    let (r1, r2) = (u, f4.add(u, Elem::ONE));
    for b1 in f4.nonzero_elements() {
        let b2 = f4.frobenius(b1, 1, 1).unwrap();
        let x = RationalFunction::x(&f4);
        let t1 = RationalFunction::new(Poly::constant(&f4, b1), Poly::linear(&f4, r1)).unwrap();
        let t2 = RationalFunction::new(Poly::constant(&f4, b2), Poly::linear(&f4, r2)).unwrap();
        let f = (&(&x + &t1) + &t2).restrict(&f2).unwrap();
        let got = power_sum_closed(&f, 1).unwrap();
        let shape = f4.sub(
            f4.neg(Elem::ONE),
            f4.div(f4.sub(b1, b2), f4.sub(r1, r2)),
        );
        assert_eq!(f2.embed(got, &f4).unwrap(), shape);
        assert_eq!(got, power_sum_brute(&f, 1).unwrap());
    }
}

#[test]
fn fingerprint_stops_at_eleven() {
    let f32 = field(32);
    let mut tested = 0;
    for c in f32.elements() {
        if f32.absolute_trace(c) != 1 {
            continue;
        }
        let f = RationalFunction::new(
            &(&Poly::x(&f32).pow(2) * &Poly::from_coeffs(&f32, vec![c, Elem::ONE, Elem::ONE]))
                + &Poly::one(&f32),
            Poly::from_coeffs(&f32, vec![c, Elem::ONE, Elem::ONE]),
        )
        .unwrap();
        let engine = PowerSums::new(&f).unwrap();
        for s in 1..=10 {
            assert_eq!(engine.sum(s).unwrap(), Elem::ZERO, "c={c:?} s={s}");
        }
        assert_eq!(engine.sum(11).unwrap(), Elem::ONE);
        tested += 1;
    }
    assert_eq!(tested, 16);
}

#[test]
fn out_of_range_is_reported() {
    let f = field(3);
    let g = rf(&f, "1/(x^2+1)");
    assert!(matches!(power_sum_closed(&g, 4), Err(Error::FormulaOutOfRange(_))));
    assert_eq!(power_sum_closed(&g, 3).unwrap(), power_sum_brute(&g, 3).unwrap());
}

#[test]
fn second_power_sum_for_odd_q() {
    // aX + 1/(X - r) + 1/(X + r), r^2 = n a nonsquare, at q = 7
    let f7 = field(7);
    let n = f7.from_int(3);
    for a in f7.nonzero_elements() {
        let den = Poly::from_coeffs(&f7, vec![f7.neg(n), Elem::ZERO, Elem::ONE]);
        let num = &(&Poly::x(&f7) * &den).scale(a) + &Poly::x(&f7).scale(f7.from_int(2));
        let f = RationalFunction::new(num, den).unwrap();
        // -(1 + 4 a r^2) / (2 r^2)
        let want = f7.neg(f7.div(
            f7.add(Elem::ONE, f7.mul(f7.from_int(4), f7.mul(a, n))),
            f7.mul(f7.from_int(2), n),
        ));
        assert_eq!(power_sum_brute(&f, 2).unwrap(), want);
        assert_eq!(power_sum_closed(&f, 2).unwrap(), want);
    }
}

#[test]
fn carlitz_identity_batch_small() {
    for q in [2u64, 3, 4, 5, 7] {
        for k in 1..=q {
            assert!(carlitz_identity_check(q, k).unwrap(), "q={q} k={k}");
        }
    }
}

fn random_pole_free(field: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> RationalFunction {
    let q = field.order() as u64;
    loop {
        let dn = rng.gen_range(0..=max_deg);
        let dd = rng.gen_range(0..=max_deg);
        let mut num: Vec<Elem> = (0..=dn).map(|_| field.elem(rng.gen_range(0..q)).unwrap()).collect();
        let mut den: Vec<Elem> = (0..dd).map(|_| field.elem(rng.gen_range(0..q)).unwrap()).collect();
        den.push(Elem::ONE);
        if num.iter().all(|c| c.is_zero()) {
            num[0] = Elem::ONE;
        }
        let Ok(f) = RationalFunction::new(Poly::from_coeffs(field, num), Poly::from_coeffs(field, den)) else {
            continue;
        };
        if f.degree() == 0 || f.has_pole_in_field() {
            continue;
        }
        return f;
    }
}

#[test]
fn closed_matches_brute_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
        let f = field(q);
        for _ in 0..15 {
            let g = random_pole_free(&f, &mut rng, 4);
            let s = rng.gen_range(1..q);
            match power_sum_closed(&g, s) {
                Ok(v) => assert_eq!(v, power_sum_brute(&g, s).unwrap(), "{g} s={s}"),
                Err(Error::FormulaOutOfRange(_)) | Err(Error::EnvelopeExceeded { .. }) => {}
                Err(e) => panic!("{g}: {e}"),
            }
        }
    }
}

#[test]
fn decomposition_closed_under_frobenius() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = field(9);
    for _ in 0..20 {
        let g = random_pole_free(&f, &mut rng, 4);
        let d = partial_fractions(&g, 2).unwrap();
        let ext = &d.ext_field;
        let mut terms = d.pole_terms.clone();
        terms.sort_by_key(|t| (t.root, t.order));
        let mut conj: Vec<PoleTerm> = terms
            .iter()
            .map(|t| PoleTerm {
                root: ext.frobenius(t.root, 1, 2).unwrap(),
                order: t.order,
                coeff: ext.frobenius(t.coeff, 1, 2).unwrap(),
            })
            .collect();
        conj.sort_by_key(|t| (t.root, t.order));
        assert_eq!(terms, conj);
    }
}

#[test]
fn hermite_consistency_for_known_permutation() {
    // X^3 permutes F_5, and fixes infinity
    let f5 = field(5);
    let g = rf(&f5, "x^3");
    for s in 1..=3 {
        assert_eq!(power_sum_closed(&g, s).unwrap(), Elem::ZERO);
    }
    assert_eq!(power_sum_closed(&g, 4).unwrap(), f5.from_int(-1));
}

#[test]
fn batch_sums_match_single() {
    let f = field(11);
    let g = rf(&f, "x^2 + 1/(x^2+1)");
    let batch = power_sums_brute(&g, 10).unwrap();
    for (i, v) in batch.iter().enumerate() {
        assert_eq!(*v, power_sum_brute(&g, i as u64 + 1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn recombination(seed in any::<u64>(), qi in 0usize..6, s in 1u64..5) {
        let q = [2u64, 3, 4, 5, 8, 9][qi];
        let f = field(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_pole_free(&f, &mut rng, 3);
        let d = partial_fractions(&g, s).unwrap();
        let ext = d.ext_field.clone();
        prop_assert_eq!(d.recombine().unwrap(), g.embed(&ext).unwrap().pow(s));
    }

    #[test]
    fn closed_equals_brute(seed in any::<u64>(), qi in 0usize..7) {
        let q = [2u64, 3, 4, 5, 7, 8, 9][qi];
        let f = field(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_pole_free(&f, &mut rng, 4);
        let engine = PowerSums::new(&g).unwrap();
        for s in 1..q {
            match engine.sum(s) {
                Ok(v) => prop_assert_eq!(v, power_sum_brute(&g, s).unwrap()),
                Err(Error::FormulaOutOfRange(_)) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
