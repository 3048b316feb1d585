use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ReproduceOptions, Tally};
use crate::carlitz::{carlitz_identity_check, power_sums_brute, PowerSums};
use crate::classify::{classify, sweep, ClassifyOptions, Form};
use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::perm::{build_family, verify_theorem, Family, PrFamilySpec, TheoremId, VerifyOptions};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::sweep::{conjugates, orbits, Orbit};
use crate::symident::{fixture, resultant_wrt, Fixture, MultiPoly};

pub(super) fn carlitz_identity(t: &mut Tally) -> Result<()> {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        for k in 1..=q {
            let ok = carlitz_identity_check(q, k)?;
            t.expect(ok, || format!("identity fails at q={q}, k={k}"));
        }
    }
    Ok(())
}

/// Every monic polynomial of degree `d`.
fn monic(base: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = base.order() as u64;
    (0..q.pow(d as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(base.elem(idx % q).expect("in range"));
            idx /= q;
        }
        c.push(Elem::ONE);
        Poly::from_coeffs(base, c)
    })
}

/// Monic denominators of degree at most 4 with no root in the field.
fn denominators(base: &Field) -> Vec<Poly> {
    let mut out = vec![Poly::one(base)];
    for d in 2..=4 {
        out.extend(monic(base, d).filter(|p| !p.has_root_in_field()));
    }
    out
}

fn numerators(base: &Field) -> Vec<Poly> {
    let q = base.order() as u64;
    if q <= 5 {
        return (1..q.pow(5))
            .map(|mut idx| {
                let c = (0..5)
                    .map(|_| {
                        let e = base.elem(idx % q).expect("in range");
                        idx /= q;
                        e
                    })
                    .collect();
                Poly::from_coeffs(base, c)
            })
            .collect();
    }
    // aX + b, and X^4 + b for a polynomial part
    let mut out = Vec::new();
    for a in base.elements() {
        for b in base.elements() {
            if !(a.is_zero() && b.is_zero()) {
                out.push(Poly::from_coeffs(base, vec![b, a]));
            }
        }
    }
    for b in base.elements() {
        out.push(Poly::from_coeffs(base, vec![b, Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]));
    }
    out
}

/// Compare the closed form with enumeration for every `s` in `1..q`; out of
/// range sums are skipped.
fn compare_sums(f: &RationalFunction, t: &mut Tally) -> Result<()> {
    let q = f.field().order() as u64;
    let engine = PowerSums::new(f)?;
    let brute = power_sums_brute(f, q - 1)?;
    for s in 1..q {
        match engine.sum(s) {
            Ok(v) => {
                t.expect(v == brute[s as usize - 1], || format!("closed != brute for f = {f}, s = {s}"));
            }
            Err(Error::FormulaOutOfRange(_)) => t.skip(),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

pub(super) fn oracle_equivalence(opts: &ReproduceOptions, t: &mut Tally) -> Result<()> {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let base = Field::from_order(q)?;
        let dens = denominators(&base);
        let nums = numerators(&base);
        let before = t.checks;
        for d in &dens {
            for n in &nums {
                compare_sums(&RationalFunction::new(n.clone(), d.clone())?, t)?;
                if t.failed() {
                    return Ok(());
                }
            }
        }
        t.note(format!(
            "q={q}: {} denominators x {} numerators, {} sums",
            dens.len(),
            nums.len(),
            t.checks - before
        ));
    }
    for q in [16u64, 25, 27, 32, 49, 64] {
        let base = Field::from_order(q)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ q);
        let (mut done, mut outside) = (0, 0);
        let before = t.checks;
        while done < opts.random_cases {
            let d = rng.gen_range(1..=4usize);
            let den = random_poly(&base, &mut rng, d, true);
            if den.has_root_in_field() {
                continue;
            }
            let dn = rng.gen_range(0..=4usize);
            let num = random_poly(&base, &mut rng, dn, false);
            if num.is_zero() {
                continue;
            }
            let f = RationalFunction::new(num, den)?;
            match compare_sums(&f, t) {
                Ok(()) => done += 1,
                Err(Error::EnvelopeExceeded { .. }) => outside += 1,
                Err(e) => return Err(e),
            }
            if t.failed() {
                return Ok(());
            }
        }
        t.note(format!(
            "q={q}: {done} random functions, {} sums, {outside} redrawn (splitting field past 2^20)",
            t.checks - before
        ));
    }
    Ok(())
}

fn random_poly(base: &Field, rng: &mut ChaCha8Rng, d: usize, monic: bool) -> Poly {
    let q = base.order() as u64;
    let mut c: Vec<Elem> = (0..=d).map(|_| base.elem(rng.gen_range(0..q)).expect("in range")).collect();
    if monic {
        c[d] = Elem::ONE;
    }
    Poly::from_coeffs(base, c)
}

fn theorem(t: &mut Tally, id: TheoremId, qs: &[u64], budget: u64) -> Result<()> {
    let opts = VerifyOptions { budget, seed: 0 };
    for &q in qs {
        let r = verify_theorem(id, q, &opts)?;
        t.expect(r.exhaustive, || format!("{id} at q={q} was sampled, not exhaustive"));
        t.expect(r.passed(), || {
            format!("{id} at q={q}: {} mismatches, first {:?}", r.failure_count, r.failures.first())
        });
        t.note(format!("{id} q={q}: {} cases, {} PRs", r.cases, r.prs_found));
    }
    Ok(())
}

pub(super) fn degree3_families(opts: &ReproduceOptions, t: &mut Tally) -> Result<()> {
    theorem(t, TheoremId::T33, &[2, 4, 8, 16, 32], opts.verify_budget)?;
    theorem(t, TheoremId::T34, &[5, 7, 9, 11, 13, 25, 27, 49], opts.verify_budget)
}

pub(super) fn lemma_l32(opts: &ReproduceOptions, t: &mut Tally) -> Result<()> {
    theorem(t, TheoremId::L32, &[2, 3, 4, 5, 7, 8, 9], opts.verify_budget)
}

pub(super) fn non_existence(opts: &ReproduceOptions, t: &mut Tally) -> Result<()> {
    theorem(t, TheoremId::T35, &[32], opts.verify_budget)?;
    theorem(t, TheoremId::T36, &[11, 13], opts.verify_budget)?;
    theorem(t, TheoremId::T37, &[27], opts.verify_budget)?;
    theorem(t, TheoremId::T38, &[5, 7, 8, 11], opts.verify_budget)?;
    theorem(t, TheoremId::T39, &[27, 81], opts.verify_budget)?;
    // the same statements over the full normal forms, before normalizing c
    let copts = ClassifyOptions { budget: opts.sweep_budget };
    for (form, qs) in [(Form::Form36, &[11u64, 13, 27][..]), (Form::Form312, &[5, 7, 8, 11][..])] {
        for &q in qs {
            let prs = sweep(q, form, &copts)?;
            t.expect(prs.is_empty(), || format!("{form} at q={q}: PR {}", prs[0]));
            t.note(format!("{form} q={q}: full sweep, {} PRs", prs.len()));
        }
    }
    Ok(())
}

/// Partial-fraction member of the quadratic-pole family with `c = 1`.
fn form36(q: u64, a: Elem, b: Elem, r: Elem) -> Result<RationalFunction> {
    build_family(&PrFamilySpec {
        q,
        family: Family::Form36 { a, b, c: Elem::ONE, r },
    })
}

fn form312(q: u64, a: Elem, r: Elem) -> Result<RationalFunction> {
    build_family(&PrFamilySpec {
        q,
        family: Family::Form312 { a, r },
    })
}

/// Closed-form sums of `f`, each checked against enumeration.
fn sums(f: &RationalFunction, ss: &[u64], t: &mut Tally) -> Result<Vec<Elem>> {
    let engine = PowerSums::new(f)?;
    let max = *ss.iter().max().expect("nonempty");
    let brute = power_sums_brute(f, max)?;
    ss.iter()
        .map(|&s| {
            let v = engine.sum(s)?;
            t.expect(v == brute[s as usize - 1], || format!("closed != brute for f = {f}, s = {s}"));
            Ok(v)
        })
        .collect()
}

struct Quadratic {
    base: Field,
    ext: Field,
    emb: Arc<Embedding>,
    orbits: Vec<Orbit>,
}

impl Quadratic {
    fn new(q: u64, d: u32) -> Result<Quadratic> {
        let base = Field::from_order(q)?;
        let (ext, orbits) = orbits(&base, d)?;
        let emb = Embedding::between(&base, &ext)?;
        Ok(Quadratic { base, ext, emb, orbits })
    }

    fn e1(&self, o: &Orbit) -> Elem {
        o.roots.iter().fold(Elem::ZERO, |s, &r| self.ext.add(s, r))
    }
}

pub(super) fn fingerprints(t: &mut Tally) -> Result<()> {
    // X^2 + 1/(X - r1) + 1/(X - r2) with r1 + r2 = 1: sums 1..10 vanish, the 11th is 1
    for q in [32u64, 64] {
        let c = Quadratic::new(q, 2)?;
        let mut n = 0;
        for o in c.orbits.iter().filter(|o| c.e1(o) == Elem::ONE) {
            let f = form36(q, Elem::ONE, Elem::ZERO, o.root())?;
            let v = sums(&f, &(1..=11).collect::<Vec<_>>(), t)?;
            for (k, &x) in v.iter().enumerate() {
                let want = if k == 10 { Elem::ONE } else { Elem::ZERO };
                t.expect(x == want, || format!("q={q}, f={f}: sum of f^{} = {}", k + 1, c.base.format_elem(x)));
            }
            n += 1;
        }
        t.note(format!("q={q}: {n} functions with r1 + r2 = 1"));
    }
    // aX^2 + 1/(X - r1) + 1/(X - r2): sum of f^3 = a(1 + a(r1 + r2)^3)
    let c = Quadratic::new(32, 2)?;
    let base = &c.base;
    for o in &c.orbits {
        let e = c.emb.preimage(c.e1(o)).expect("trace in the base field");
        for a in base.nonzero_elements() {
            let v = sums(&form36(32, a, Elem::ZERO, o.root())?, &[3], t)?[0];
            let want = base.mul(a, base.add(Elem::ONE, base.mul(a, base.pow(e, 3))));
            t.expect(v == want, || format!("q=32, a={}, r={}: cube sum", base.format_elem(a), c.ext.format_elem(o.root())));
        }
    }
    t.note(format!("q=32: cube sums for {} (a, r)", c.orbits.len() * 31));
    // aX^2 + bX + 1/(X - r) + 1/(X + r): sum of f^2 = -(1 + 4b r^2)/(2 r^2)
    for q in [11u64, 13] {
        let c = Quadratic::new(q, 2)?;
        let base = &c.base;
        let mut n = 0;
        for o in c.orbits.iter().filter(|o| c.e1(o).is_zero()) {
            let nu = c.emb.preimage(c.ext.mul(o.root(), o.root())).expect("r^2 in the base field");
            for a in base.nonzero_elements() {
                for b in base.elements() {
                    let v = sums(&form36(q, a, b, o.root())?, &[2], t)?[0];
                    let num = base.add(Elem::ONE, base.mul(base.from_int(4), base.mul(b, nu)));
                    let want = base.neg(base.div(num, base.mul(base.from_int(2), nu)));
                    t.expect(v == want, || {
                        format!("q={q}, a={}, b={}, r^2={}: square sum", base.format_elem(a), base.format_elem(b), base.format_elem(nu))
                    });
                    n += 1;
                }
            }
        }
        t.note(format!("q={q}: square sums for {n} (a, b, r)"));
    }
    Ok(())
}

pub(super) fn resultants(t: &mut Tally) -> Result<()> {
    let h1 = fixture(Fixture::H1);
    let stated = MultiPoly::monomial;
    for (h, name, value) in [(Fixture::H2, "h2", 972i64), (Fixture::H3, "h3", 5103)] {
        let res = resultant_wrt(&h1, &fixture(h), "r1")?;
        let want = stated(value.into(), &[("r2", 12)]);
        let signed = res == want;
        let absolute = signed || res == want.neg();
        t.note(format!("Res(h1, {name}; r1) = {res}; stated {want}; signed match {signed}, up to sign {absolute}"));
        t.expect(signed, || format!("Res(h1, {name}; r1) = {res}, stated {want}"));
        // nonvanishing away from the primes dividing the integer factor
        let content = res.content();
        t.expect(content == num_bigint::BigInt::from(value), || format!("content of Res(h1, {name}; r1) is {content}"));
    }
    t.expect(972 == 2 * 2 * 3i64.pow(5) && 5103 == 3i64.pow(6) * 7, || "factorizations".into());
    // one of the two resultants survives in every characteristic other than 3
    for p in (2u64..200).filter(|&p| crate::gf::prime_power(p).is_some_and(|(_, n)| n == 1)) {
        let survives = 972 % p != 0 || 5103 % p != 0;
        t.expect(survives == (p != 3), || format!("case split fails at p={p}"));
    }
    Ok(())
}

/// Random `r` of degree 3 over `F_q` with `r1 + r2 + r3 = 0`, with its
/// conjugates.
fn trace_free_cubic(base: &Field, ext: &Field, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    loop {
        let r = ext.elem(rng.gen_range(0..ext.order() as u64)).expect("in range");
        let c = conjugates(ext, r, base.n());
        if c.len() == 3 && ext.add(ext.add(c[0], c[1]), c[2]).is_zero() {
            return c;
        }
    }
}

pub(super) fn instantiation(opts: &ReproduceOptions, t: &mut Tally) -> Result<()> {
    let hs = [fixture(Fixture::H1), fixture(Fixture::H2), fixture(Fixture::H3)];
    let fields: Vec<Quadratic> = [7u64, 11, 13, 25].iter().map(|&q| Quadratic::new(q, 3)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..opts.instantiations {
        let c = &fields[i % fields.len()];
        let (base, ext) = (&c.base, &c.ext);
        let q = base.order() as u64;
        let r = trace_free_cubic(base, ext, &mut rng);
        let a = base.elem(rng.gen_range(1..q)).expect("in range");
        let f = form312(q, a, r[0])?;
        let v = sums(&f, &[1, 2, 3], t)?;
        let delta = ext.mul(ext.mul(ext.sub(r[0], r[1]), ext.sub(r[1], r[2])), ext.sub(r[2], r[0]));
        let at = BTreeMap::from([
            ("a".to_string(), c.emb.apply(a)),
            ("r1".to_string(), r[0]),
            ("r2".to_string(), r[1]),
        ]);
        for (k, h) in hs.iter().enumerate() {
            let s = k as u64 + 1;
            let sign = if s == 2 { -3 } else { 3 };
            let want = ext.div(ext.mul(ext.from_int(sign), h.instantiate(&at, ext)?), ext.pow(delta, s));
            t.expect(c.emb.apply(v[k]) == want, || format!("q={q}, f={f}: sum of f^{s} against h{s}"));
        }
    }
    t.note(format!("{} instantiations over q in {{7, 11, 13, 25}}", opts.instantiations));
    Ok(())
}

pub(super) fn classification(t: &mut Tally) -> Result<()> {
    let opts = ClassifyOptions::default();
    let lists: [(Form, &[(u64, usize)]); 2] = [
        (Form::Form36, &[(2, 2), (4, 5), (8, 3), (16, 0), (3, 3), (9, 0), (5, 2), (7, 1)]),
        (Form::Form312, &[(2, 0), (4, 0), (3, 2), (9, 1)]),
    ];
    for (form, list) in lists {
        for &(q, n) in list {
            let r = classify(q, form.degree(), form, &opts)?;
            t.expect(r.class_count == n, || format!("{form} q={q}: {} classes, listed {n}", r.class_count));
            t.expect(r.matches_references() == Some(true), || {
                format!("{form} q={q}: listed functions do not match the classes one to one")
            });
            t.note(format!("{form} q={q}: {} classes from {} PRs", r.class_count, r.prs_found));
        }
    }
    for q in [2u64, 4, 8, 16, 5, 7, 11, 13, 3, 9] {
        let r = classify(q, 3, Form::Deg3, &opts)?;
        let stated = usize::from(q % 3 != 0);
        t.note(format!(
            "degree 3 q={q}: {} PR class, {} not equivalent to a polynomial",
            r.pr_class_count, r.class_count
        ));
        t.expect(r.pr_class_count == 1, || format!("degree 3 q={q}: {} PR classes", r.pr_class_count));
        t.expect(r.class_count == stated, || {
            format!(
                "degree 3 q={q}: {} non-polynomial classes, stated {stated} (the PR class is equivalent to X^3 when 3 does not divide q - 1)",
                r.class_count
            )
        });
    }
    Ok(())
}

pub(super) fn proof_sums(t: &mut Tally) -> Result<()> {
    // aX^2 + X + 1/(X - r1) + 1/(X - r2) over F_32, e = r1 + r2
    let c = Quadratic::new(32, 2)?;
    let (base, ext) = (&c.base, &c.ext);
    let h = fixture(Fixture::H);
    let one = Elem::ONE;
    for o in &c.orbits {
        let e = c.emb.preimage(c.e1(o)).expect("trace in the base field");
        let e2 = base.mul(e, e);
        let e3 = base.mul(e2, e);
        for a in base.nonzero_elements() {
            let f = form36(32, a, one, o.root())?;
            let v = sums(&f, &[3, 5, 7], t)?;
            let u = base.add(one, base.mul(a, e));
            let w = base.add(base.add(one, e2), base.mul(a, e3));
            t.expect(v[0] == base.div(base.mul(u, w), e), || format!("cube sum of {f}"));
            let z = [one, e2, base.mul(e2, e2), base.mul(a, e3), base.mul(base.mul(a, a), base.mul(e3, e3))]
                .into_iter()
                .fold(Elem::ZERO, |s, x| base.add(s, x));
            t.expect(v[1] == base.div(base.mul(base.mul(u, w), z), e3), || format!("fifth sum of {f}"));
            let at = BTreeMap::from([
                ("a".to_string(), c.emb.apply(a)),
                ("r1".to_string(), o.roots[0]),
                ("r2".to_string(), o.roots[1]),
            ]);
            let hv = c.emb.preimage(h.instantiate(&at, ext)?).expect("symmetric in r1, r2");
            t.expect(v[2] == base.div(base.mul(u, hv), e3), || format!("seventh sum of {f}"));
            if a == base.add(base.inv(e), base.inv(e3)) {
                let s = base.add(one, e);
                t.expect(hv == base.mul(s, s), || format!("h at a = 1/e + 1/e^3 for {f}"));
            }
        }
    }
    t.note("q=32: sums 3, 5, 7 of aX^2 + X + 1/(X - r1) + 1/(X - r2), all (a, r)");
    // aX^2 + bX + 1/(X - r) + 1/(X + r) with b = -1/(4 r^2): sum of f^3 = -6a
    for q in [11u64, 13] {
        let c = Quadratic::new(q, 2)?;
        let base = &c.base;
        for o in c.orbits.iter().filter(|o| c.e1(o).is_zero()) {
            let nu = c.emb.preimage(c.ext.mul(o.root(), o.root())).expect("r^2 in the base field");
            let b = base.neg(base.inv(base.mul(base.from_int(4), nu)));
            for a in base.nonzero_elements() {
                let f = form36(q, a, b, o.root())?;
                let v = sums(&f, &[3], t)?[0];
                t.expect(v == base.mul(base.from_int(-6), a), || format!("cube sum of {f}"));
            }
        }
    }
    t.note("q=11, 13: cube sums at b = -1/(4r^2)");
    // characteristic 3, aX + sum of 1/(X - r_i)
    for q in [27u64, 81] {
        let c = Quadratic::new(q, 3)?;
        let (base, ext) = (&c.base, &c.ext);
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        for _ in 0..200 {
            let o = &c.orbits[rng.gen_range(0..c.orbits.len())];
            let a = base.elem(rng.gen_range(1..q)).expect("in range");
            let r = &o.roots;
            let v = sums(&form312(q, a, r[0])?, &[1], t)?[0];
            let e1 = c.e1(o);
            let delta = ext.mul(ext.mul(ext.sub(r[0], r[1]), ext.sub(r[1], r[2])), ext.sub(r[2], r[0]));
            t.expect(c.emb.apply(v) == ext.div(ext.mul(e1, e1), delta), || format!("q={q}: first sum"));
        }
        let free: Vec<&Orbit> = c.orbits.iter().filter(|o| c.e1(o).is_zero()).collect();
        for _ in 0..200 {
            let o = free[rng.gen_range(0..free.len())];
            let a = base.elem(rng.gen_range(1..q)).expect("in range");
            let r = &o.roots;
            let v = sums(&form312(q, a, r[0])?, &[4, 5], t)?;
            t.expect(v[0].is_zero(), || format!("q={q}: fourth sum"));
            let d = ext.sub(r[0], r[1]);
            let a2 = ext.mul(c.emb.apply(a), c.emb.apply(a));
            let want = ext.mul(ext.div(a2, d), ext.sub(Elem::ONE, ext.mul(a2, ext.pow(d, 4))));
            t.expect(c.emb.apply(v[1]) == want, || format!("q={q}: fifth sum"));
        }
        // X + sum of 1/(X - r_i) with r2 = r1 - 1
        let mut n = 0;
        for o in free.iter().filter(|o| ext.sub(o.roots[0], o.roots[1]) == Elem::ONE) {
            let v = sums(&form312(q, Elem::ONE, o.root())?, &[7, 8], t)?;
            t.expect(v[0].is_zero() && v[1] == Elem::ONE, || format!("q={q}: sums 7, 8 at r = {}", ext.format_elem(o.root())));
            n += 1;
        }
        t.note(format!("q={q}: first, fourth, fifth sums on 200 samples each; sums 7, 8 on {n} orbits"));
    }
    Ok(())
}
