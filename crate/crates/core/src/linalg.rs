//! Small dense linear algebra over Z, Q and F_q.
//!
//! Matrices are row-major `Vec<Vec<_>>`; sizes here never exceed a few
//! hundred rows, so nothing is clever.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Row-style Hermite normal form: the nonzero rows of the result span the
/// same lattice as `rows`, are in echelon form with positive pivots, and
/// entries above each pivot are reduced into `[0, pivot)`.
pub fn hnf(rows: &[Vec<BigInt>]) -> IntMatrix {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: IntMatrix = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: IntMatrix = Vec::new();
    let mut col = 0;
    while col < ncols && !m.is_empty() {
        // gcd-combine column `col` into a single row
        loop {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let piv = *nonzero.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            for &i in &nonzero {
                if i == piv {
                    continue;
                }
                let q = m[i][col].div_floor(&m[piv][col]);
                let prow = m[piv].clone();
                for (x, y) in m[i].iter_mut().zip(prow.iter()) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = (0..m.len()).find(|&i| !m[i][col].is_zero()) {
            let mut row = m.remove(i);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    // reduce above pivots
    for k in 0..out.len() {
        let pc = (0..ncols).find(|&c| !out[k][c].is_zero()).unwrap();
        let pivot = out[k][pc].clone();
        let prow = out[k].clone();
        for row in out.iter_mut().take(k) {
            let q = row[pc].div_floor(&pivot);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(prow.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    out
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Inverse over Q; `None` for singular input.
pub fn inverse_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(piv, c);
        inv.swap(piv, c);
        let s = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &s;
            inv[c][j] = &inv[c][j] * &s;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..n {
                    let t = &factor * &a[c][j];
                    a[i][j] -= t;
                    let t = &factor * &inv[c][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

pub fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Row vector times matrix over Q.
pub fn vec_mat_rational(v: &[BigRational], m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|j| v.iter().zip(m.iter()).fold(BigRational::zero(), |acc, (x, row)| acc + x * &row[j]))
        .collect()
}

/// Basis of the left kernel `{x : x A = 0}` over F_q; `a` has entries
/// reduced mod q.
pub fn left_kernel_mod(a: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    // work on the transpose: x A = 0 iff A^T x^T = 0
    let mut t: Vec<Vec<u64>> = (0..m).map(|j| (0..n).map(|i| a[i][j] % q).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| t[i][c] != 0) else { continue };
        t.swap(pr, r);
        let inv = modinv(t[r][c], q);
        for x in t[r].iter_mut() {
            *x = mulq(*x, inv, q);
        }
        for i in 0..m {
            if i != r && t[i][c] != 0 {
                let f = t[i][c];
                for j in 0..n {
                    let sub = mulq(f, t[r][j], q);
                    t[i][j] = (t[i][j] + q - sub) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - t[row][fc]) % q;
            }
            v
        })
        .collect()
}

fn mulq(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn modinv(a: u64, q: u64) -> u64 {
    crate::arith::inv_mod(a as u128, q as u128).expect("pivot not invertible") as u64
}
