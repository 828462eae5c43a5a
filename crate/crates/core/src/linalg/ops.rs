use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPolynomial};
use crate::error::{Error, Result};

fn require_square(a: &IntMatrix, what: &str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "{what} needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    require_square(a, "determinant")?;
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = v / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

/// Signed minors: entry `(i, j)` is `(-1)^(i+j) · det(minor(i, j))`.
pub fn cofactor_matrix(a: &IntMatrix) -> Result<IntMatrix> {
    require_square(a, "cofactor matrix")?;
    let n = a.rows();
    if n < 2 {
        return Err(Error::Dimension("cofactor matrix needs n >= 2".into()));
    }
    let mut c = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&a.minor_matrix(i, j))?;
            c[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(c)
}

/// Classical adjugate, `adj(A) · A = det(A) · I`. Defined for every square size.
pub fn adjugate(a: &IntMatrix) -> Result<IntMatrix> {
    require_square(a, "adjugate")?;
    if a.rows() == 1 {
        return Ok(IntMatrix::identity(1));
    }
    Ok(cofactor_matrix(a)?.transpose())
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier.
pub fn char_poly(a: &IntMatrix) -> Result<IntPolynomial> {
    require_square(a, "characteristic polynomial")?;
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        m = &m * a;
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let am = &m * a;
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Internal("inexact Faddeev-LeVerrier step".into()));
        }
        coeffs[n - k] = -q;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Characteristic polynomial by Laplace expansion of `det(xI - A)`; used as a
/// second opinion for small matrices.
pub fn char_poly_by_expansion(a: &IntMatrix) -> Result<IntPolynomial> {
    require_square(a, "characteristic polynomial")?;
    let n = a.rows();
    let entries: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a[(i, j)].clone();
                    if i == j {
                        IntPolynomial::new(vec![c, BigInt::one()])
                    } else {
                        IntPolynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(poly_det(&entries, 0, &cols))
}

fn poly_det(m: &[Vec<IntPolynomial>], row: usize, cols: &[usize]) -> IntPolynomial {
    if cols.is_empty() {
        return IntPolynomial::one();
    }
    let mut acc = IntPolynomial::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].mul(&poly_det(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Greatest common divisor of all `k x k` minors (zero if all vanish).
pub fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
    let rows = subsets(a.rows(), k);
    let cols = subsets(a.cols(), k);
    let mut g = BigInt::zero();
    for r in &rows {
        for c in &cols {
            let d = determinant(&a.select(r, c)).expect("square selection");
            g = g.gcd(&d);
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
