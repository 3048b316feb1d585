use super::MultiPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` and `g` in `var`: `deg g` shifted rows of the
/// coefficients of `f`, leading first, above `deg f` rows for `g`.
pub fn sylvester(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Vec<Vec<MultiPoly>>> {
    let m = positive_degree(f, var)?;
    let n = positive_degree(g, var)?;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, shifts) in [(f.coefficients_in(var), n), (g.coefficients_in(var), m)] {
        for k in 0..shifts {
            let mut row = vec![MultiPoly::zero(); size];
            for (j, c) in coeffs.iter().rev().enumerate() {
                row[k + j] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

fn positive_degree(f: &MultiPoly, var: &str) -> Result<usize> {
    match f.degree_in(var) {
        Some(d) if d > 0 => Ok(d as usize),
        _ => Err(Error::ConstantPolynomial),
    }
}

/// `Res(f, g; var)`, the determinant of [`sylvester`], by fraction-free
/// Gaussian elimination over the ring of the remaining variables.
pub fn resultant_wrt(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let mut a = sylvester(f, g, var)?;
    let n = a.len();
    let mut prev = MultiPoly::constant(1);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(MultiPoly::zero());
            };
            a.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// The same determinant by cofactor expansion; exponential, for small
/// cross-checks only.
pub fn resultant_cofactor(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let a = sylvester(f, g, var)?;
    let cols: Vec<usize> = (0..a.len()).collect();
    Ok(cofactor(&a, 0, &cols))
}

fn cofactor(a: &[Vec<MultiPoly>], row: usize, cols: &[usize]) -> MultiPoly {
    if cols.is_empty() {
        return MultiPoly::constant(1);
    }
    let mut acc = MultiPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = a[row][c].mul(&cofactor(a, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}
