//! Linear algebra over Z/p^j.
//!
//! Z/p^j is a local ring, so every matrix has a Smith form whose pivots are
//! powers of p: pick the entry of least valuation, scale it to p^v by a
//! unit, and clear its row and column (every other entry is divisible by
//! p^v). Submodules of (Z/p^j)^n are handled through generator lists.

use crate::arith::inv_mod;

pub type Vector = Vec<u64>;
pub type Matrix = Vec<Vec<u64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZMod {
    pub p: u64,
    pub j: u32,
    pub q: u64,
}

/// `L * A * R = D` with D diagonal, diagonal entries `p^{valuations[t]}`
/// for `t < rank` and zero beyond.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: Matrix,
    pub right: Matrix,
    pub valuations: Vec<u32>,
    pub rank: usize,
}

impl ZMod {
    pub fn new(p: u64, j: u32) -> ZMod {
        let q = p.checked_pow(j).filter(|&q| q < (1 << 31)).expect("p^j too large");
        ZMod { p, j, q }
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a) % self.q
    }

    /// p-adic valuation, `j` for zero.
    pub fn valuation(&self, mut a: u64) -> u32 {
        a %= self.q;
        if a == 0 {
            return self.j;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        inv_mod(a as u128, self.q as u128).map(|x| x as u64)
    }

    pub fn pow_p(&self, v: u32) -> u64 {
        if v >= self.j {
            0
        } else {
            self.p.pow(v)
        }
    }

    pub fn identity(&self, n: usize) -> Matrix {
        (0..n).map(|i| (0..n).map(|k| u64::from(i == k)).collect()).collect()
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let inner = b.len();
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                debug_assert_eq!(row.len(), inner);
                (0..cols)
                    .map(|c| (0..inner).fold(0, |acc, k| self.add(acc, self.mul(row[k], b[k][c]))))
                    .collect()
            })
            .collect()
    }

    pub fn mat_vec(&self, a: &Matrix, v: &[u64]) -> Vector {
        a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))).collect()
    }

    pub fn mat_add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| self.add(x, y)).collect()).collect()
    }

    pub fn mat_scale(&self, c: u64, a: &Matrix) -> Matrix {
        a.iter().map(|r| r.iter().map(|&x| self.mul(c, x)).collect()).collect()
    }

    pub fn transpose(&self, a: &Matrix, cols: usize) -> Matrix {
        (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect()
    }

    pub fn smith(&self, a: &Matrix, cols: usize) -> SmithForm {
        let rows = a.len();
        let mut a: Matrix = a.iter().map(|r| r.iter().map(|&x| x % self.q).collect()).collect();
        let mut left = self.identity(rows);
        let mut right = self.identity(cols);
        let mut valuations = Vec::new();
        for t in 0..rows.min(cols) {
            // deterministic pivot: least valuation, then first in row-major order
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (c, &x) in row.iter().enumerate().skip(t) {
                    let v = self.valuation(x);
                    if v < self.j && best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, c));
                    }
                }
            }
            let Some((v, pi, pc)) = best else { break };
            a.swap(t, pi);
            left.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            for row in right.iter_mut() {
                row.swap(t, pc);
            }
            let unit = a[t][t] / self.p.pow(v);
            let u_inv = self.inv(unit).expect("unit part");
            for x in a[t].iter_mut() {
                *x = self.mul(*x, u_inv);
            }
            for x in left[t].iter_mut() {
                *x = self.mul(*x, u_inv);
            }
            let pv = self.p.pow(v);
            for i in 0..rows {
                if i != t && a[i][t] != 0 {
                    let c = a[i][t] / pv;
                    for k in 0..cols {
                        a[i][k] = self.sub(a[i][k], self.mul(c, a[t][k]));
                    }
                    for k in 0..rows {
                        left[i][k] = self.sub(left[i][k], self.mul(c, left[t][k]));
                    }
                }
            }
            for c in 0..cols {
                if c != t && a[t][c] != 0 {
                    let d = a[t][c] / pv;
                    for row in a.iter_mut() {
                        row[c] = self.sub(row[c], self.mul(d, row[t]));
                    }
                    for row in right.iter_mut() {
                        row[c] = self.sub(row[c], self.mul(d, row[t]));
                    }
                }
            }
            valuations.push(v);
        }
        let rank = valuations.len();
        SmithForm { left, right, valuations, rank }
    }

    /// Generators of `{x : x A = 0}` for the rows of A.
    pub fn left_kernel(&self, a: &Matrix, cols: usize) -> Vec<Vector> {
        let s = self.smith(a, cols);
        let mut out = Vec::new();
        for (t, row) in s.left.iter().enumerate() {
            let factor = match s.valuations.get(t) {
                Some(&v) => self.pow_p(self.j - v),
                None => 1,
            };
            if factor != 0 {
                out.push(row.iter().map(|&x| self.mul(factor, x)).collect());
            }
        }
        out
    }

    /// Invariant factors of the submodule generated by `gens`, as exponents
    /// e with summands Z/p^e, sorted descending (trivial summands omitted).
    pub fn structure(&self, gens: &[Vector], n: usize) -> Vec<u32> {
        if gens.is_empty() {
            return Vec::new();
        }
        let s = self.smith(&gens.to_vec(), n);
        let mut e: Vec<u32> = s.valuations.iter().map(|&v| self.j - v).collect();
        e.sort_unstable_by(|a, b| b.cmp(a));
        e
    }

    /// log_p of the submodule's order.
    pub fn log_size(&self, gens: &[Vector], n: usize) -> u32 {
        self.structure(gens, n).iter().sum()
    }

    pub fn intersect(&self, u: &[Vector], w: &[Vector], n: usize) -> Vec<Vector> {
        if u.is_empty() || w.is_empty() {
            return Vec::new();
        }
        let mut stacked: Matrix = u.to_vec();
        stacked.extend(w.iter().map(|r| r.iter().map(|&x| self.neg(x)).collect::<Vector>()));
        self.left_kernel(&stacked, n)
            .into_iter()
            .map(|k| {
                (0..n).map(|c| u.iter().zip(&k).fold(0, |acc, (g, &x)| self.add(acc, self.mul(x, g[c])))).collect()
            })
            .filter(|v: &Vector| v.iter().any(|&x| x != 0))
            .collect()
    }

    pub fn contains(&self, big: &[Vector], small: &[Vector], n: usize) -> bool {
        self.log_size(&self.intersect(big, small, n), n) == self.log_size(small, n)
    }

    pub fn same_submodule(&self, u: &[Vector], w: &[Vector], n: usize) -> bool {
        self.contains(u, w, n) && self.contains(w, u, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(z: &ZMod, a: &Matrix, cols: usize) {
        let s = z.smith(a, cols);
        let d = z.mat_mul(&z.mat_mul(&s.left, a), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                let expected = if i == c && i < s.rank { z.pow_p(s.valuations[i]) } else { 0 };
                assert_eq!(x, expected, "entry ({i},{c})");
            }
        }
    }

    #[test]
    fn smith_form_is_diagonal() {
        let z = ZMod::new(5, 3);
        check_smith(&z, &vec![vec![5, 10, 3], vec![25, 0, 15], vec![0, 50, 100]], 3);
        check_smith(&z, &vec![vec![0, 0], vec![0, 25]], 2);
        check_smith(&z, &vec![vec![7, 1, 2, 3]], 4);
    }

    #[test]
    fn submodule_structure() {
        let z = ZMod::new(5, 2);
        assert_eq!(z.structure(&[vec![5, 0], vec![0, 1]], 2), vec![2, 1]);
        assert_eq!(z.structure(&[vec![5, 10]], 2), vec![1]);
        let both = z.intersect(&[vec![1, 0]], &[vec![1, 5]], 2);
        // (1,0)Z ∩ (1,5)Z = multiples of (5,0)
        assert_eq!(z.structure(&both, 2), vec![1]);
        assert!(z.contains(&[vec![1, 0]], &both, 2));
        assert!(z.same_submodule(&[vec![2, 0]], &[vec![1, 0]], 2));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let z = ZMod::new(7, 2);
        let a = vec![vec![7, 14], vec![1, 2], vec![3, 6]];
        for k in z.left_kernel(&a, 2) {
            let prod: Vec<u64> = (0..2).map(|c| (0..3).fold(0, |s, i| z.add(s, z.mul(k[i], a[i][c])))).collect();
            assert_eq!(prod, vec![0, 0]);
        }
        // the image is the free line through (1,2), so the kernel has order 49^2
        assert_eq!(z.log_size(&z.left_kernel(&a, 2), 3), 4);
    }
}
