//! Exact integer polynomial helpers: characteristic polynomials, resultants
//! and discriminants.
//!
//! Polynomials are coefficient vectors in ascending degree order.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Characteristic polynomial `det(X*I - A)` of a square integer matrix, by
/// Faddeev–LeVerrier. The divisions by `k` are exact over the integers.
pub fn charpoly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_0 = 0, M_k = A*M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A*M_k)/k
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let k_big = BigInt::from(k);
        debug_assert!((&trace % &k_big).is_zero());
        coeffs[n - k] = -(trace / k_big);
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two nonzero polynomials via the Sylvester determinant.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let df = degree(f).expect("zero polynomial");
    let dg = degree(g).expect("zero polynomial");
    let size = df + dg;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..dg {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in f[..=df].iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..df {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in g[..=dg].iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// `disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f)`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = degree(f).expect("zero polynomial");
    assert!(n >= 1, "discriminant of a constant");
    let res = resultant(f, &derivative(f));
    let lc = &f[n];
    let value = res / lc;
    if (n * (n - 1) / 2) % 2 == 1 {
        -value
    } else {
        value
    }
}
