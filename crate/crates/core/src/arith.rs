//! Integer helpers shared by the p-adic, number-field and search layers.
//!
//! Machine-word routines work on `u128` with moduli below 2^127; everything
//! that can outgrow that goes through `num_bigint::BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `a * b mod m` for `m < 2^127`.
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0 && m < (1u128 << 127));
    let (a, b) = (a % m, b % m);
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    if let Some(prod) = a.checked_mul(b) {
        return prod % m;
    }
    // double-and-add; every intermediate stays below 2m < 2^128
    let mut acc: u128 = 0;
    for bit in (0..128 - b.leading_zeros()).rev() {
        acc <<= 1;
        if acc >= m {
            acc -= m;
        }
        if (b >> bit) & 1 == 1 {
            acc += a;
            if acc >= m {
                acc -= m;
            }
        }
    }
    acc
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    let (g, x, _) = ext_gcd_i128(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u128)
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Bases proven sufficient for every n < 3.317e24 (first 13 primes).
pub const MR_BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Upper limit below which [`MR_BASES`] is a deterministic witness set.
pub const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const SMALL_PRIMES: [u128; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Deterministic primality for `n < MR_DETERMINISTIC_LIMIT`. Callers are
/// responsible for the range check.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &q in SMALL_PRIMES.iter() {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    if n < 97 * 97 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in MR_BASES.iter() {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u128, c: u128) -> Option<u128> {
    let f = |x: u128| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, m) = (2u128, 1u64, 1u128, 64u64);
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u128(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u128(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime_u128(n) {
        out.push(n);
        return;
    }
    for c in 1..200u128 {
        if let Some(d) = pollard_brent(n, c) {
            split_into(d, out);
            split_into(n / d, out);
            return;
        }
    }
    panic!("failed to split composite {n}");
}

/// Prime factorization of `n >= 1`, ascending primes with exponents.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n >= 1, "factor_u128 requires n >= 1");
    assert!(n < MR_DETERMINISTIC_LIMIT, "factor_u128: {n} out of range");
    let mut primes = Vec::new();
    let mut q = 2u128;
    while q < 10_000 && q * q <= n {
        while n.is_multiple_of(q) {
            primes.push(q);
            n /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_into(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Factorization of |n| for a nonzero `BigInt` that fits the `u128` routines.
pub fn factor_big(n: &BigInt) -> Vec<(u128, u32)> {
    let m = n.abs().to_u128().expect("integer too large to factor");
    factor_u128(m)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Least non-negative residue.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Legendre symbol (a/p) for an odd prime p: 1, -1 or 0.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return 0;
    }
    let r = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (d/n) for n >= 1.
pub fn kronecker(d: i128, mut n: u128) -> i32 {
    assert!(n >= 1);
    let mut result = 1i32;
    let tz = n.trailing_zeros();
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        // (d/2) = 1 if d = ±1 mod 8, -1 if d = ±3 mod 8
        let r = d.rem_euclid(8);
        if tz % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
        n >>= tz;
    }
    // Jacobi symbol (d/n), n odd
    let mut a = d.rem_euclid(n as i128) as u128;
    let mut m = n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: &BigInt, p: u64) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while legendre(&BigInt::from(z), p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = BigInt::from(z).modpow(&BigInt::from(q), &pb);
    let mut t = a.modpow(&BigInt::from(q), &pb);
    let mut r = a.modpow(&BigInt::from(q.div_ceil(2)), &pb);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % &pb;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % &pb;
        }
        m = i;
        c = (&b * &b) % &pb;
        t = (&t * &c) % &pb;
        r = (&r * &b) % &pb;
    }
    Some(r)
}

/// Square root of a unit square modulo p^n (p odd), lifting the root that
/// reduces to `sqrt_mod_prime`.
pub fn sqrt_mod_prime_power(a: &BigInt, p: u64, n: u32) -> Option<BigInt> {
    let r0 = sqrt_mod_prime(a, p)?;
    if r0.is_zero() {
        return None;
    }
    let modulus = big_pow(p, n);
    let two = BigInt::from(2);
    let mut r = r0;
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let m = big_pow(p, prec);
        // Newton step r <- r - (r^2 - a) / (2r)
        let inv = inv_mod_big(&(&two * &r), &m)?;
        r = (&r - (&r * &r - a) * inv).mod_floor(&m);
    }
    Some(r.mod_floor(&modulus))
}

/// Writes `n = s * k^2` with `s` squarefree (sign carried by `s`).
pub fn squarefree_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut k = BigInt::one();
    for (q, e) in factor_big(n) {
        let q = BigInt::from(q);
        if e % 2 == 1 {
            s *= &q;
        }
        k *= num_traits::pow(q, (e / 2) as usize);
    }
    (s, k)
}

/// Fundamental discriminant of Q(sqrt(n)) for a non-square integer n.
pub fn fundamental_discriminant(n: &BigInt) -> BigInt {
    let (s, _) = squarefree_decomposition(n);
    if s.mod_floor(&BigInt::from(4)) == BigInt::one() {
        s
    } else {
        s * 4
    }
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; limit as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= limit as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_mod_wide_matches_bigint() {
        let m: u128 = (1u128 << 100) + 277;
        let a: u128 = (1u128 << 99) + 12345;
        let b: u128 = (1u128 << 98) + 999;
        let expect = (BigInt::from(a) * BigInt::from(b)) % BigInt::from(m);
        assert_eq!(BigInt::from(mul_mod(a, b, m)), expect);
    }

    #[test]
    fn factor_small_and_semiprime() {
        assert_eq!(factor_u128(5260), vec![(2, 2), (5, 1), (263, 1)]);
        let n: u128 = 1_000_000_007u128 * 998_244_353u128;
        assert_eq!(factor_u128(n), vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn kronecker_agrees_with_legendre_on_odd_primes() {
        for p in [5u64, 7, 11, 13, 263] {
            for a in -30i128..30 {
                assert_eq!(kronecker(a, p as u128), legendre(&BigInt::from(a), p), "a={a} p={p}");
            }
        }
        assert_eq!(kronecker(-1315, 2), -1);
        assert_eq!(kronecker(-23, 2), 1);
    }

    #[test]
    fn tonelli_shanks_and_lift() {
        for a in 1..40u64 {
            if legendre(&BigInt::from(a), 41) == 1 {
                let r = sqrt_mod_prime_power(&BigInt::from(a), 41, 5).unwrap();
                let m = big_pow(41, 5);
                assert_eq!((&r * &r - a).mod_floor(&m), BigInt::zero());
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(&BigInt::from(-5260)), BigInt::from(-1315));
        assert_eq!(fundamental_discriminant(&BigInt::from(-4)), BigInt::from(-4));
        assert_eq!(fundamental_discriminant(&BigInt::from(-8)), BigInt::from(-8));
        assert_eq!(fundamental_discriminant(&BigInt::from(-12)), BigInt::from(-3));
    }
}
