use super::*;
use crate::gf::Field;
use crate::poly::Poly;
use crate::text::parse_ratfun;
use proptest::prelude::*;

fn field(q: u64) -> Field {
    Field::from_order(q).unwrap()
}

fn rf(f: &Field, s: &str) -> RationalFunction {
    parse_ratfun(f, s).unwrap()
}

#[test]
fn brute_examples() {
    assert!(is_pr_brute(&rf(&field(7), "x")));
    assert!(!is_pr_brute(&rf(&field(5), "x^2")));
    assert!(is_pr_brute(&rf(&field(4), "x^2")));
    assert!(is_pr_brute(&rf(&field(3), "x + 1/(x^3-x+1)")));
}

#[test]
fn hermite_examples() {
    assert!(hermite_test(&rf(&field(7), "x")).unwrap());
    assert!(hermite_test(&rf(&field(5), "x^3")).unwrap());
    assert!(!hermite_test(&rf(&field(5), "x^2")).unwrap());
    assert!(!hermite_test(&RationalFunction::constant(&field(5), Elem::ONE)).unwrap());
    // not fixing ∞: 1/x and (x^3+1)/x^2
    assert!(hermite_test(&rf(&field(7), "1/x")).unwrap());
    let g = rf(&field(4), "(x^3+1)/(x^2+u)");
    assert_eq!(hermite_test(&g).unwrap(), is_pr_brute(&g));
}

#[test]
fn hermite_rejects_t33_off_the_line() {
    let q = 8;
    let ext = field(64);
    let mut checked = 0;
    for r in ext.elements() {
        let r2 = ext.frobenius(r, 1, 3).unwrap();
        if r2 == r || ext.add(r, r2) == Elem::ONE {
            continue;
        }
        let f = build_family(&PrFamilySpec {
            q,
            family: Family::T33 { r },
        })
        .unwrap();
        assert!(!hermite_test(&f).unwrap());
        checked += 1;
    }
    assert_eq!(checked, 64 - 8 - 8);
}

/// Every `P/Q` over `F_q` with `Q` monic, `deg Q < deg P <= max_deg`.
fn fixing_infinity(f: &Field, max_deg: usize) -> Vec<RationalFunction> {
    let q = f.order() as u64;
    let poly_of = |idx: u64, len: usize| -> Vec<Elem> {
        let mut v = idx;
        (0..len)
            .map(|_| {
                let c = f.elem(v % q).unwrap();
                v /= q;
                c
            })
            .collect()
    };
    let mut out = Vec::new();
    for dp in 1..=max_deg {
        for lead in f.nonzero_elements() {
            for low in 0..q.pow(dp as u32) {
                let mut num = poly_of(low, dp);
                num.push(lead);
                for dq in 0..dp {
                    for dl in 0..q.pow(dq as u32) {
                        let mut den = poly_of(dl, dq);
                        den.push(Elem::ONE);
                        let Ok(g) = RationalFunction::new(
                            Poly::from_coeffs(f, num.clone()),
                            Poly::from_coeffs(f, den),
                        ) else {
                            continue;
                        };
                        if g.num().deg0() == dp && g.den().deg0() == dq {
                            out.push(g);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn hermite_agrees_with_brute_over_f4() {
    let f = field(4);
    let all = fixing_infinity(&f, 3);
    assert!(all.len() > 1000);
    let mut prs = 0;
    for g in &all {
        let b = is_pr_brute(g);
        assert_eq!(hermite_test(g).unwrap(), b, "{g}");
        prs += b as usize;
    }
    assert!(prs > 0);
}

#[test]
fn hermite_agrees_with_brute_small_q() {
    for q in [2u64, 3, 5] {
        let f = field(q);
        for g in fixing_infinity(&f, 3) {
            assert_eq!(hermite_test(&g).unwrap(), is_pr_brute(&g), "{g} over {f}");
        }
    }
}

#[test]
fn family_examples() {
    let f2 = field(2);
    let u = field(4).generator().unwrap();
    let t33 = build_family(&PrFamilySpec {
        q: 2,
        family: Family::T33 { r: u },
    })
    .unwrap();
    assert_eq!(t33, rf(&f2, "x + 1/(x^2+x+1)"));
    assert!(is_pr_brute(&t33));

    // r^2 = 2 in F_25, a = -1/(4*2) = 3
    let f5 = field(5);
    let f25 = field(25);
    let r = f25.sqrt(f25.from_int(2)).unwrap();
    let t34 = build_family(&PrFamilySpec {
        q: 5,
        family: Family::T34 { a: f5.from_int(3), r },
    })
    .unwrap();
    assert_eq!(t34, rf(&f5, "3*x + 2*x/(x^2-2)"));
    assert!(is_pr_brute(&t34));

    let f27 = field(27);
    let delta = f27.elements().find(|&d| f27.absolute_trace(d) != 0).unwrap();
    let yuan = build_family(&PrFamilySpec {
        q: 27,
        family: Family::Yuan { delta },
    })
    .unwrap();
    let want = &RationalFunction::x(&f27)
        + &RationalFunction::new(
            Poly::one(&f27),
            Poly::from_coeffs(&f27, vec![delta, f27.from_int(-1), Elem::ZERO, Elem::ONE]),
        )
        .unwrap();
    assert_eq!(yuan, want);
    assert!(is_pr_brute(&yuan));
}

#[test]
fn family_hypotheses() {
    let u = field(4).generator().unwrap();
    let bad = |q: u64, family: Family| build_family(&PrFamilySpec { q, family }).is_err();
    assert!(bad(3, Family::T33 { r: u }));
    // r = 1 lies in the base field
    assert!(bad(2, Family::T33 { r: Elem::ONE }));
    assert!(bad(2, Family::Form33 { a: Elem::ZERO, r: u }));
    assert!(bad(27, Family::Yuan { delta: Elem::ZERO }));
    assert!(bad(5, Family::Yuan { delta: Elem::ONE }));
    // (u + 1)^2 = 2u - 1 is not in F_5
    let f25 = field(25);
    let r = f25.add(f25.generator().unwrap(), Elem::ONE);
    assert!(bad(5, Family::T34 { a: Elem::ONE, r }));
}

#[test]
fn families_have_base_coefficients_and_nominal_degree() {
    let f16 = field(16);
    let f256 = field(256);
    let r = f256.generator().unwrap();
    for (family, degree) in [
        (Family::Form33 { a: Elem::ONE, r }, 3),
        (
            Family::Form36 {
                a: Elem::ONE,
                b: Elem::ONE,
                c: f256.from_int(1),
                r,
            },
            4,
        ),
        (Family::Form32 { b: r, r }, 3),
    ] {
        let f = build_family(&PrFamilySpec { q: 16, family }).unwrap();
        assert_eq!(f.field(), &f16);
        assert_eq!(f.degree(), degree);
        assert!(!f.has_pole_in_field());
    }
    let f4096 = field(4096);
    let r = f4096.generator().unwrap();
    let f = build_family(&PrFamilySpec {
        q: 16,
        family: Family::Form312 { a: Elem::ONE, r },
    })
    .unwrap();
    assert_eq!(f.degree(), 4);
    assert!(!f.has_pole_in_field());
}

/// `f(X + y) - f(X)` for the T3.3 family factors as displayed in its proof.
#[test]
fn t33_difference_factorization() {
    let q = 8;
    let f8 = field(8);
    let f64 = field(64);
    let emb = crate::gf::Embedding::between(&f8, &f64).unwrap();
    for r in f64.elements() {
        let rq = f64.frobenius(r, 1, 3).unwrap();
        if rq == r || f64.add(r, rq) != Elem::ONE {
            continue;
        }
        let f = build_family(&PrFamilySpec {
            q,
            family: Family::T33 { r },
        })
        .unwrap()
        .embed(&f64)
        .unwrap();
        let x = Poly::x(&f64);
        let c = |v: Elem| Poly::constant(&f64, v);
        let one = Elem::ONE;
        let rr = f64.add(r, f64.mul(r, r));
        let x2x = &x.pow(2) + &x;
        let big = &(&x2x + &c(rr)) + &c(one);
        let small = &x2x + &c(rr);
        for y in f8.nonzero_elements() {
            let y = emb.apply(y);
            let shifted = f.compose(&RationalFunction::from_poly(&x + &c(y))).unwrap();
            let lhs = &shifted - &f;
            let num = &(&(&big.pow(2) + &big.scale(y)) + &small.scale(f64.mul(y, y))).scale(y)
                * &Poly::one(&f64);
            let den = &(&(&x + &c(r)) * &(&x + &c(f64.add(r, one))))
                * &(&(&x + &c(f64.add(y, r))) * &(&x + &c(f64.add(f64.add(y, r), one))));
            assert_eq!(lhs, RationalFunction::new(num, den).unwrap());
        }
    }
}

#[test]
fn theorem_examples() {
    let opts = VerifyOptions::default();
    let t33 = verify_theorem(TheoremId::T33, 16, &opts).unwrap();
    assert!(t33.passed(), "{t33:?}");
    assert_eq!(t33.prs_found, 16);
    assert_eq!(t33.cases, 256 - 16);
    assert!(t33.exhaustive);

    let t38 = verify_theorem(TheoremId::T38, 11, &opts).unwrap();
    assert!(t38.passed());
    assert_eq!(t38.prs_found, 0);

    let t39 = verify_theorem(TheoremId::T39, 27, &opts).unwrap();
    assert!(t39.passed(), "{:?}", t39.failures);
    assert!(t39.prs_found > 0);
}

#[test]
fn small_theorems_pass() {
    let opts = VerifyOptions::default();
    for (id, qs) in [
        (TheoremId::L32, vec![2u64, 3, 4, 5, 7, 8, 9]),
        (TheoremId::T33, vec![2, 4, 8]),
        (TheoremId::T34, vec![3, 5, 7, 9, 11, 13]),
        (TheoremId::T36, vec![11, 13]),
        (TheoremId::T38, vec![5, 7, 8]),
        (TheoremId::R33, vec![2, 4, 8, 16]),
        (TheoremId::R35, vec![3, 5, 7, 9, 11]),
        (TheoremId::R46, vec![2, 4, 8, 3, 9, 27]),
    ] {
        for q in qs {
            let rep = verify_theorem(id, q, &opts).unwrap();
            assert!(rep.passed(), "{id} q={q}: {:?}", rep.failures);
            assert!(rep.cases > 0);
        }
    }
}

#[test]
fn lemma_3_2_finds_prs_only_with_base_b() {
    let rep = verify_theorem(TheoremId::L32, 5, &VerifyOptions::default()).unwrap();
    assert!(rep.passed());
    assert!(rep.prs_found > 0);
}

#[test]
fn hypotheses_on_q() {
    let opts = VerifyOptions::default();
    assert!(verify_theorem(TheoremId::T35, 16, &opts).is_err());
    assert!(verify_theorem(TheoremId::T33, 9, &opts).is_err());
    assert!(verify_theorem(TheoremId::T36, 7, &opts).is_err());
    assert!(verify_theorem(TheoremId::T37, 9, &opts).is_err());
    assert!(verify_theorem(TheoremId::T38, 9, &opts).is_err());
    assert!(verify_theorem(TheoremId::R46, 5, &opts).is_err());
}

#[test]
fn sampling_is_deterministic() {
    let opts = VerifyOptions { budget: 100, seed: 42 };
    let a = verify_theorem(TheoremId::T39, 27, &opts).unwrap();
    let b = verify_theorem(TheoremId::T39, 27, &opts).unwrap();
    assert!(!a.exhaustive);
    assert_eq!(a, b);
    assert!(a.passed());
    assert!(a.prs_found > 0);
    let json = serde_json::to_value(&a).unwrap();
    assert_eq!(json["theorem"], "T3.9");
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["seed"], 42);
}

#[test]
fn theorem_ids_round_trip() {
    for id in TheoremId::ALL {
        assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
    }
    assert!("T9.9".parse::<TheoremId>().is_err());
}

fn arb_mobius(q: u64) -> impl Strategy<Value = MobiusTransform> {
    let f = field(q);
    let all = MobiusTransform::enumerate(&f);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn equivalence_preserves_pr(phi in arb_mobius(8), psi in arb_mobius(8)) {
        let f = rf(&field(8), "(u^2+1)*x^2 + x + u^2/(x^2 + u^2*x + 1)");
        prop_assert!(is_pr_brute(&f));
        let g = crate::ratfun::EquivalenceWitness { phi, psi }.apply(&f);
        prop_assert!(is_pr_brute(&g));
        prop_assert_eq!(hermite_test(&g).unwrap(), true);
    }

    #[test]
    fn hermite_matches_brute_random(num in prop::collection::vec(0u32..9, 2..6), den in prop::collection::vec(0u32..9, 1..4)) {
        let f = field(9);
        let n = Poly::from_indices(&f, &num).unwrap();
        let d = Poly::from_indices(&f, &den).unwrap();
        prop_assume!(!d.is_zero());
        let Ok(g) = RationalFunction::new(n, d) else { return Ok(()); };
        prop_assume!(g.degree() >= 1);
        prop_assert_eq!(hermite_test(&g).unwrap(), is_pr_brute(&g));
    }
}
