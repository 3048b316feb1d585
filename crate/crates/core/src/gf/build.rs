//! Field construction: canonical modulus search and log/antilog tables.
//!
//! Everything here works on raw coefficient vectors over `F_p` since the
//! tables that make [`Field`](super::Field) arithmetic fast do not exist yet.

use super::{FieldData, NO_LOG};

type Vp = Vec<u32>;

fn trim(mut v: Vp) -> Vp {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `a mod f` for monic `f`.
fn rem(mut a: Vp, f: &[u32], p: u32) -> Vp {
    let n = f.len() - 1;
    let p64 = p as u64;
    while a.len() > n {
        let top = a.len() - 1;
        let c = a[top] as u64;
        if c != 0 {
            for j in 0..n {
                let idx = top - n + j;
                a[idx] = ((a[idx] as u64 + p64 - c * f[j] as u64 % p64) % p64) as u32;
            }
        }
        a.pop();
    }
    trim(a)
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vp {
    rem(mul(a, b, p), f, p)
}

fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vp {
    let mut r = vec![1u32];
    let mut b = rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, f, p);
        }
    }
    r
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vp {
    let len = a.len().max(b.len());
    let v = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(v)
}

fn gcd(mut a: Vp, mut b: Vp, p: u32) -> Vp {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        // make b monic, then reduce
        let lc_inv = inv_mod(*b.last().unwrap(), p);
        let bm: Vp = b.iter().map(|&c| (c as u64 * lc_inv as u64 % p as u64) as u32).collect();
        let r = rem(a, &bm, p);
        a = bm;
        b = r;
    }
    a
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Rabin's test for a monic polynomial over `F_p`.
pub(crate) fn is_irreducible_over_prime(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = vec![x.clone()];
    for _ in 0..n {
        let last = frob.last().unwrap();
        frob.push(powmod(last, p as u64, f, p));
    }
    if sub(&frob[n], &x, p) != Vec::<u32>::new() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|l| {
        let h = sub(&frob[n / l as usize], &x, p);
        gcd(f.to_vec(), h, p).len() == 1
    })
}

/// Smallest monic irreducible of degree `n` over `F_p`, ordered by the base-`p`
/// integer `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`.
pub(crate) fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    let q = (p as u64).pow(n);
    for idx in 0..q {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut v = idx;
        for _ in 0..n {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        if is_irreducible_over_prime(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(idx: u32, p: u32, n: usize) -> Vp {
    let mut v = idx;
    (0..n)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn index(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn find_primitive(p: u32, modulus: &[u32]) -> u32 {
    let n = modulus.len() - 1;
    let q = (p as u64).pow(n as u32);
    let m = q - 1;
    if m == 1 {
        return 1;
    }
    let factors = prime_factors(m);
    let start = if n == 1 { 2 } else { p as u64 };
    for cand in (start..q).chain(1..start) {
        let g = trim(digits(cand as u32, p, n));
        let primitive = factors
            .iter()
            .all(|&l| powmod(&g, m / l, modulus, p) != vec![1]);
        if primitive {
            return cand as u32;
        }
    }
    unreachable!("the multiplicative group is cyclic")
}

pub(crate) fn build_tables(id: u64, p: u32, modulus: Vec<u32>, canonical: bool) -> FieldData {
    let n = modulus.len() - 1;
    let q = p.pow(n as u32);
    let m = (q - 1) as usize;
    let primitive = find_primitive(p, &modulus);

    let mut exp = vec![0u32; 2 * m];
    let mut log = vec![NO_LOG; q as usize];
    let g = digits(primitive, p, n);
    let g_terms: Vec<(usize, u64)> = g
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c as u64))
        .collect();
    let p64 = p as u64;
    let mut cur = vec![0u32; n];
    cur[0] = 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, slot) in exp.iter_mut().take(m).enumerate() {
        let idx = index(&cur, p);
        *slot = idx;
        debug_assert_eq!(log[idx as usize], NO_LOG, "generator is not primitive");
        log[idx as usize] = i as u32;
        // cur *= g (mod modulus)
        prod.iter_mut().for_each(|c| *c = 0);
        for (k, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, gj) in &g_terms {
                prod[k + j] = (prod[k + j] + c as u64 * gj) % p64;
            }
        }
        for top in (n..2 * n).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let t = top - n + j;
                prod[t] = (prod[t] + p64 - c * modulus[j] as u64 % p64) % p64;
            }
            prod[top] = 0;
        }
        for k in 0..n {
            cur[k] = prod[k] as u32;
        }
    }
    for i in 0..m {
        exp[m + i] = exp[i];
    }

    let zech = if p != 2 && n > 1 {
        (0..m)
            .map(|k| {
                let v = exp[k];
                let c0 = v % p;
                let w = v - c0 + (c0 + 1) % p;
                if w == 0 {
                    NO_LOG
                } else {
                    log[w as usize]
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    FieldData {
        id,
        p,
        n: n as u32,
        q,
        modulus,
        canonical,
        primitive,
        exp,
        log,
        zech,
    }
}
