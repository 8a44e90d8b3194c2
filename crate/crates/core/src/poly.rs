//! Monic cubics and the small amount of dense polynomial arithmetic the
//! rest of the crate needs: evaluation, Taylor shifts, root finding modulo a
//! prime and in Z_q.
//!
//! Dense polynomials are `Vec<BigInt>` with the constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, inv_mod_big};

/// `x^3 + c2 x^2 + c1 x + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonicCubic {
    pub c2: i64,
    pub c1: i64,
    pub c0: i64,
}

impl MonicCubic {
    pub const fn new(c2: i64, c1: i64, c0: i64) -> Self {
        MonicCubic { c2, c1, c0 }
    }

    /// Coefficients `[c0, c1, c2, 1]`.
    pub fn coeffs(&self) -> Vec<BigInt> {
        vec![
            BigInt::from(self.c0),
            BigInt::from(self.c1),
            BigInt::from(self.c2),
            BigInt::one(),
        ]
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        eval(&self.coeffs(), x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        ((x + self.c2 as f64) * x + self.c1 as f64) * x + self.c0 as f64
    }

    /// Discriminant `b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd` with a = 1.
    pub fn discriminant(&self) -> BigInt {
        let b = BigInt::from(self.c2);
        let c = BigInt::from(self.c1);
        let d = BigInt::from(self.c0);
        &b * &b * &c * &c - 4 * &c * &c * &c - 4 * &b * &b * &b * &d - 27 * &d * &d
            + 18 * &b * &c * &d
    }

    /// Rational roots are integer divisors of c0.
    pub fn rational_root(&self) -> Option<i64> {
        if self.c0 == 0 {
            return Some(0);
        }
        let n = self.c0.unsigned_abs();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                for cand in [d, n / d] {
                    for s in [cand as i64, -(cand as i64)] {
                        if self.eval(&BigInt::from(s)).is_zero() {
                            return Some(s);
                        }
                    }
                }
            }
            d += 1;
        }
        None
    }

    /// The cubic whose roots are those of `self` shifted by `c`
    /// (i.e. `f(x - c)`).
    pub fn translate(&self, c: i64) -> MonicCubic {
        let g = taylor_shift(&self.coeffs(), &BigInt::from(-c), &BigInt::one());
        let to_i64 = |v: &BigInt| i64::try_from(v).expect("translated coefficient overflows i64");
        MonicCubic::new(to_i64(&g[2]), to_i64(&g[1]), to_i64(&g[0]))
    }

    /// Real roots via the cubic's depressed form, refined by Newton.
    /// Returns the real roots and, when there is exactly one, the complex
    /// root with positive imaginary part.
    pub fn numeric_roots(&self) -> (Vec<f64>, Option<(f64, f64)>) {
        let (b, c, d) = (self.c2 as f64, self.c1 as f64, self.c0 as f64);
        let p = c - b * b / 3.0;
        let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        let disc = -(4.0 * p * p * p + 27.0 * q * q);
        let refine = |mut x: f64| {
            for _ in 0..60 {
                let fx = self.eval_f64(x);
                let dfx = (3.0 * x + 2.0 * b) * x + c;
                if dfx == 0.0 {
                    break;
                }
                let step = fx / dfx;
                x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            x
        };
        if disc > 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let theta = (3.0 * q / (p * m)).clamp(-1.0, 1.0).acos() / 3.0;
            let mut roots: Vec<f64> = (0..3)
                .map(|k| refine(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - b / 3.0))
                .collect();
            roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
            (roots, None)
        } else {
            let s = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
            let t = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() - b / 3.0;
            let r = refine(t);
            // remaining quadratic x^2 + (b + r) x + (c + r(b + r))
            let bb = b + r;
            let cc = c + r * bb;
            let re = -bb / 2.0;
            let im = (cc - re * re).max(0.0).sqrt();
            (vec![r], Some((re, im)))
        }
    }
}

impl fmt::Display for MonicCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3")?;
        for (c, mon) in [(self.c2, "x^2"), (self.c1, "x"), (self.c0, "")] {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { '-' } else { '+' };
            let mag = c.unsigned_abs();
            if mag == 1 && !mon.is_empty() {
                write!(f, " {sign} {mon}")?;
            } else {
                write!(f, " {sign} {mag}{mon}")?;
            }
        }
        Ok(())
    }
}

pub fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn eval_mod(poly: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    poly.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

pub fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Coefficients of `g(y) = poly(a + b*y)`.
pub fn taylor_shift(poly: &[BigInt], a: &BigInt, b: &BigInt) -> Vec<BigInt> {
    // Horner in the polynomial ring: acc <- acc * (a + b y) + c
    let mut acc: Vec<BigInt> = Vec::with_capacity(poly.len());
    for c in poly.iter().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (k, v) in acc.iter().enumerate() {
            next[k] += v * a;
            next[k + 1] += v * b;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

fn trim(poly: &mut Vec<BigInt>) {
    while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    if poly.is_empty() {
        poly.push(BigInt::zero());
    }
}

fn reduce(poly: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = poly.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn is_zero_poly(poly: &[BigInt]) -> bool {
    poly.iter().all(|c| c.is_zero())
}

fn degree(poly: &[BigInt]) -> usize {
    poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Remainder of `a` by `b` modulo the prime `p` (b nonzero mod p).
fn rem_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut r = reduce(a, p);
    let b = reduce(b, p);
    let db = degree(&b);
    let lead_inv = inv_mod_big(&b[db], p).expect("leading coefficient must be a unit");
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = (&r[dr] * &lead_inv).mod_floor(p);
        for k in 0..=db {
            let idx = dr - db + k;
            r[idx] = (&r[idx] - &factor * &b[k]).mod_floor(p);
        }
        trim(&mut r);
    }
    r
}

fn mul_mod_poly(a: &[BigInt], b: &[BigInt], modulus: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    rem_mod(&prod, modulus, p)
}

fn pow_mod_poly(base: &[BigInt], exp: &BigInt, modulus: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    let mut b = rem_mod(base, modulus, p);
    let bits = exp.bits();
    for k in 0..bits {
        if exp.bit(k) {
            acc = mul_mod_poly(&acc, &b, modulus, p);
        }
        if k + 1 < bits {
            b = mul_mod_poly(&b, &b, modulus, p);
        }
    }
    acc
}

fn gcd_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut a = reduce(a, p);
    let mut b = reduce(b, p);
    while !is_zero_poly(&b) {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    // make monic
    let d = degree(&a);
    if is_zero_poly(&a) {
        return a;
    }
    let inv = inv_mod_big(&a[d], p).unwrap();
    a.iter().map(|c| (c * &inv).mod_floor(p)).collect()
}

fn sub_poly(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (k, o) in out.iter_mut().enumerate() {
        let x = a.get(k).cloned().unwrap_or_default();
        let y = b.get(k).cloned().unwrap_or_default();
        *o = (x - y).mod_floor(p);
    }
    trim(&mut out);
    out
}

fn div_exact_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut r = reduce(a, p);
    let b = reduce(b, p);
    let db = degree(&b);
    let lead_inv = inv_mod_big(&b[db], p).unwrap();
    let dr0 = degree(&r);
    if dr0 < db {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); dr0 - db + 1];
    while !is_zero_poly(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let factor = (&r[dr] * &lead_inv).mod_floor(p);
        q[dr - db] = factor.clone();
        for k in 0..=db {
            let idx = dr - db + k;
            r[idx] = (&r[idx] - &factor * &b[k]).mod_floor(p);
        }
        trim(&mut r);
    }
    q
}

/// Brute force below this prime, gcd-based splitting above it.
const BRUTE_FORCE_LIMIT: u64 = 4096;

/// Distinct roots of `poly` modulo the prime `p`, ascending.
pub fn roots_mod_p(poly: &[BigInt], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let g = reduce(poly, &pb);
    if is_zero_poly(&g) {
        panic!("roots_mod_p: polynomial vanishes identically mod {p}");
    }
    if degree(&g) == 0 {
        return Vec::new();
    }
    if p <= BRUTE_FORCE_LIMIT {
        return (0..p)
            .map(BigInt::from)
            .filter(|x| eval_mod(&g, x, &pb).is_zero())
            .collect();
    }
    // product of the distinct linear factors: gcd(x^p - x, g)
    let x = vec![BigInt::zero(), BigInt::one()];
    let xp = pow_mod_poly(&x, &pb, &g, &pb);
    let split = gcd_mod(&g, &sub_poly(&xp, &x, &pb), &pb);
    let mut roots = Vec::new();
    equal_degree_roots(&split, &pb, &mut roots);
    roots.sort();
    roots
}

/// Roots of a monic squarefree product of linear factors, split by
/// deterministic shifts `gcd((x + delta)^((p-1)/2) - 1, g)`.
fn equal_degree_roots(g: &[BigInt], p: &BigInt, out: &mut Vec<BigInt>) {
    let d = degree(g);
    if d == 0 {
        return;
    }
    if d == 1 {
        // g = x + g0, monic
        out.push((-&g[0]).mod_floor(p));
        return;
    }
    let half = (p - 1u32) / 2u32;
    let mut delta = BigInt::zero();
    loop {
        let base = vec![delta.clone(), BigInt::one()];
        let pw = pow_mod_poly(&base, &half, g, p);
        let h = gcd_mod(g, &sub_poly(&pw, &[BigInt::one()], p), p);
        let dh = degree(&h);
        if dh > 0 && dh < d {
            let rest = div_exact_mod(g, &h, p);
            let rest = gcd_mod(&rest, &rest, p);
            equal_degree_roots(&h, p, out);
            equal_degree_roots(&rest, p, out);
            return;
        }
        delta += 1;
    }
}

/// Multiplicity of the root `r` of `poly` modulo `p`.
pub fn multiplicity_mod_p(poly: &[BigInt], r: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut g = reduce(poly, &pb);
    let lin = vec![(-r).mod_floor(&pb), BigInt::one()];
    let mut m = 0;
    while !is_zero_poly(&g) && eval_mod(&g, r, &pb).is_zero() {
        g = div_exact_mod(&g, &lin, &pb);
        m += 1;
    }
    m
}

/// Degree pattern of the factorization of a cubic modulo p as
/// `(multiplicity, degree)` pairs: roots first (ascending), then at most
/// one irreducible factor of degree 2 or 3.
pub fn factor_pattern_mod_p(poly: &[BigInt], p: u64) -> Vec<(u32, u32)> {
    let roots = roots_mod_p(poly, p);
    let mut out = Vec::new();
    let mut used = 0u32;
    for r in &roots {
        let m = multiplicity_mod_p(poly, r, p);
        out.push((m, 1));
        used += m;
    }
    let deg = degree(&reduce(poly, &BigInt::from(p))) as u32;
    if used < deg {
        // the remaining factor has no roots; for a cubic it is irreducible
        out.push((1, deg - used));
    }
    out
}

/// Hensel-lifts a simple root `r0` of `poly` modulo `p` to modulo `p^n`.
pub fn hensel_lift(poly: &[BigInt], p: u64, r0: &BigInt, n: u32) -> BigInt {
    let dpoly = derivative(poly);
    let mut r = r0.mod_floor(&BigInt::from(p));
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let m = big_pow(p, prec);
        let fr = eval_mod(poly, &r, &m);
        let dfr = eval_mod(&dpoly, &r, &m);
        let inv = inv_mod_big(&dfr, &m).expect("hensel_lift: root is not simple");
        r = (&r - fr * inv).mod_floor(&m);
    }
    r
}

/// Distinct roots of `poly` in Z_q, each to precision `q^prec`, sorted by
/// residue. Works for repeated roots modulo q by recursive refinement; the
/// polynomial must be separable over Q_q with integral roots only relevant.
pub fn zq_roots(poly: &[BigInt], q: u64, prec: u32) -> Vec<BigInt> {
    let mut out = Vec::new();
    let modulus = big_pow(q, prec);
    zq_roots_rec(poly.to_vec(), q, prec, &BigInt::zero(), 0, &mut out, 0);
    let mut out: Vec<BigInt> = out.into_iter().map(|r| r.mod_floor(&modulus)).collect();
    out.sort();
    out.dedup();
    out
}

fn zq_roots_rec(
    mut g: Vec<BigInt>,
    q: u64,
    prec: u32,
    offset: &BigInt,
    scale_exp: u32,
    out: &mut Vec<BigInt>,
    depth: u32,
) {
    assert!(depth < 4096, "zq_roots: runaway recursion (inseparable input?)");
    let qb = BigInt::from(q);
    if scale_exp >= prec {
        // every lift agrees to the requested precision
        out.push(offset.clone());
        return;
    }
    // strip content divisible by q
    while !is_zero_poly(&g) && g.iter().all(|c| c.mod_floor(&qb).is_zero()) {
        g = g.iter().map(|c| c / &qb).collect();
    }
    if is_zero_poly(&g) {
        out.push(offset.clone());
        return;
    }
    let dg = derivative(&g);
    for y0 in roots_mod_p(&g, q) {
        let scale = big_pow(q, scale_exp);
        if !eval_mod(&dg, &y0, &qb).is_zero() {
            let need = prec - scale_exp;
            let y = hensel_lift(&g, q, &y0, need);
            out.push(offset + &scale * y);
        } else {
            let next = taylor_shift(&g, &y0, &qb);
            zq_roots_rec(next, q, prec, &(offset + &scale * &y0), scale_exp + 1, out, depth + 1);
        }
    }
}

/// Synthetic division of a cubic by `(x - r)` modulo `m`; returns the monic
/// quadratic `[c0, c1, 1]`.
pub fn deflate_cubic(f: &MonicCubic, r: &BigInt, m: &BigInt) -> [BigInt; 3] {
    let b = (BigInt::from(f.c2) + r).mod_floor(m);
    let c = (BigInt::from(f.c1) + r * &b).mod_floor(m);
    [c, b, BigInt::one()]
}
