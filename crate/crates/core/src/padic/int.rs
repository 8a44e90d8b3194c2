use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::PadicError;
use crate::arith::{big_pow, inv_mod_big, valuation};
use crate::poly::{derivative, eval_mod, hensel_lift, MonicCubic};

/// An element of Z_p known modulo p^precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: BigInt,
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Self {
        assert!(precision >= 1, "p-adic precision must be positive");
        let residue = value.into().mod_floor(&big_pow(p, precision));
        PadicInt { p, precision, residue }
    }

    /// `num / den` with `den` prime to p.
    pub fn from_ratio(p: u64, precision: u32, num: &BigInt, den: &BigInt) -> Result<Self, PadicError> {
        let m = big_pow(p, precision);
        let inv = inv_mod_big(den, &m).ok_or(PadicError::NotUnit)?;
        Ok(PadicInt::new(p, precision, num * inv))
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        PadicInt::new(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Self {
        PadicInt::new(p, precision, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Representative in `[0, p^precision)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        big_pow(self.p, self.precision)
    }

    /// Zero to the available precision.
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// `None` when the element is zero to precision.
    pub fn valuation(&self) -> Option<u32> {
        (!self.residue.is_zero()).then(|| valuation(&self.residue, self.p))
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Truncation to a lower precision.
    pub fn with_precision(&self, precision: u32) -> Self {
        assert!(precision <= self.precision, "cannot raise precision by truncation");
        PadicInt::new(self.p, precision, self.residue.clone())
    }

    pub fn pow(&self, exp: &BigInt) -> Self {
        let m = self.modulus();
        PadicInt {
            p: self.p,
            precision: self.precision,
            residue: self.residue.modpow(exp, &m),
        }
    }

    pub fn inverse(&self) -> Result<Self, PadicError> {
        let m = self.modulus();
        let inv = inv_mod_big(&self.residue, &m).ok_or(PadicError::NotUnit)?;
        Ok(PadicInt { p: self.p, precision: self.precision, residue: inv })
    }

    /// Exact division by `p^k`; the result is known to `precision - k`.
    pub fn div_by_p_power(&self, k: u32) -> Result<Self, PadicError> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.precision {
            return Err(PadicError::PrecisionTooLow { needed: k + 1, available: self.precision });
        }
        let pk = big_pow(self.p, k);
        let (q, r) = self.residue.div_rem(&pk);
        if !r.is_zero() {
            return Err(PadicError::NotDivisible { k });
        }
        Ok(PadicInt::new(self.p, self.precision - k, q))
    }

    /// Congruence modulo `p^k` (k must not exceed either precision).
    pub fn congruent_mod(&self, other: &BigInt, k: u32) -> bool {
        assert!(k <= self.precision);
        let m = big_pow(self.p, k);
        (&self.residue - other).mod_floor(&m).is_zero()
    }

    fn combine(&self, rhs: &PadicInt, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> PadicInt {
        assert_eq!(self.p, rhs.p, "p-adic arithmetic across different primes");
        let precision = self.precision.min(rhs.precision);
        PadicInt::new(self.p, precision, op(&self.residue, &rhs.residue))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.precision)
    }
}

impl Add for &PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: &PadicInt) -> PadicInt {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: &PadicInt) -> PadicInt {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: &PadicInt) -> PadicInt {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        PadicInt::new(self.p, self.precision, -&self.residue)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for PadicInt {
            type Output = PadicInt;
            fn $method(self, rhs: PadicInt) -> PadicInt {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Lifts a simple root `r0` of `f` modulo p to a root modulo `p^precision`.
pub fn hensel_lift_root(f: &MonicCubic, p: u64, r0: &BigInt, precision: u32) -> Result<PadicInt, PadicError> {
    let coeffs = f.coeffs();
    let pb = BigInt::from(p);
    if !eval_mod(&coeffs, r0, &pb).is_zero() {
        return Err(PadicError::NotRoot);
    }
    if eval_mod(&derivative(&coeffs), r0, &pb).is_zero() {
        return Err(PadicError::NotSimpleRoot);
    }
    Ok(PadicInt::new(p, precision, hensel_lift(&coeffs, p, r0, precision)))
}

/// Largest `i <= max_i` such that the unit `u` is a `p^i`-th power in
/// Z_p^×. Uses `u^(p-1) ≡ 1 mod p^(i+1)`: raising to `p - 1` discards the
/// Teichmüller part, and on 1-units `x -> x^p` maps `1 + p^k Z_p` onto
/// `1 + p^(k+1) Z_p`.
pub fn pth_power_index_qp(u: &PadicInt, max_i: u32) -> Result<u32, PadicError> {
    if !u.is_unit() {
        return Err(PadicError::NotUnit);
    }
    if u.precision() < max_i + 1 {
        return Err(PadicError::PrecisionTooLow { needed: max_i + 1, available: u.precision() });
    }
    let w = u.pow(&BigInt::from(u.prime() - 1));
    let diff = &w - &PadicInt::one(u.prime(), u.precision());
    Ok(match diff.valuation() {
        None => max_i,
        Some(v) => (v - 1).min(max_i),
    })
}

/// Whether a local field with residue field of size `q` and absolute
/// ramification index `e` contains the p-th roots of unity.
pub fn contains_pth_roots_of_unity(q: &BigInt, e: u32, p: u64) -> bool {
    let pb = BigInt::from(p);
    if q.mod_floor(&pb).is_zero() {
        // residue characteristic p: zeta_p generates a totally ramified
        // extension of degree p - 1 over Q_p
        e as u64 >= p - 1
    } else {
        q.mod_floor(&pb).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_flagship_root() {
        let f = MonicCubic::new(0, 7, -12);
        let r = hensel_lift_root(&f, 5, &BigInt::from(2), 3).unwrap();
        assert_eq!(r.residue(), &BigInt::from(62));
        assert_eq!(r.precision(), 3);
    }

    #[test]
    fn hensel_exact_root_is_fixed() {
        let f = MonicCubic::new(0, 0, -1);
        let r = hensel_lift_root(&f, 7, &BigInt::one(), 4).unwrap();
        assert_eq!(r.residue(), &BigInt::one());
        assert_eq!(r.modulus(), BigInt::from(2401));
    }

    #[test]
    fn hensel_x3_x_1_mod_31() {
        let f = MonicCubic::new(0, 1, 1);
        // the simple root mod 31, found by trying every residue
        let coeffs = f.coeffs();
        let d = derivative(&coeffs);
        let p = BigInt::from(31);
        let r0 = (0..31)
            .map(BigInt::from)
            .find(|x| eval_mod(&coeffs, x, &p).is_zero() && !eval_mod(&d, x, &p).is_zero())
            .unwrap();
        let r = hensel_lift_root(&f, 31, &r0, 2).unwrap();
        assert!(f.eval(r.residue()).mod_floor(&BigInt::from(961)).is_zero());
        assert!(r.congruent_mod(&r0, 1));
    }

    #[test]
    fn hensel_errors() {
        let f = MonicCubic::new(0, 7, -12);
        assert_eq!(hensel_lift_root(&f, 5, &BigInt::from(1), 3), Err(PadicError::NotRoot));
        assert_eq!(hensel_lift_root(&f, 5, &BigInt::from(4), 3), Err(PadicError::NotSimpleRoot));
    }

    #[test]
    fn power_index_examples() {
        let u = PadicInt::new(5, 4, 849);
        assert_eq!(pth_power_index_qp(&u, 3), Ok(1));
        for p in [5u64, 7, 11] {
            assert_eq!(pth_power_index_qp(&PadicInt::one(p, 4), 3), Ok(3));
        }
        assert_eq!(pth_power_index_qp(&PadicInt::new(7, 2, 2), 1), Ok(0));
    }

    #[test]
    fn power_index_errors() {
        assert_eq!(pth_power_index_qp(&PadicInt::new(5, 4, 10), 2), Err(PadicError::NotUnit));
        assert_eq!(
            pth_power_index_qp(&PadicInt::new(5, 2, 2), 3),
            Err(PadicError::PrecisionTooLow { needed: 4, available: 2 })
        );
    }

    #[test]
    fn roots_of_unity_in_completions() {
        assert!(!contains_pth_roots_of_unity(&BigInt::from(263), 1, 5));
        assert!(contains_pth_roots_of_unity(&BigInt::from(11), 1, 5));
        assert!(!contains_pth_roots_of_unity(&BigInt::from(5), 2, 5));
        assert!(contains_pth_roots_of_unity(&BigInt::from(5), 4, 5));
    }

    #[test]
    #[should_panic(expected = "different primes")]
    fn mixing_primes_panics() {
        let _ = &PadicInt::one(5, 3) + &PadicInt::one(7, 3);
    }

    #[test]
    fn precision_is_minimum_of_operands() {
        let a = PadicInt::new(5, 3, 7);
        let b = PadicInt::new(5, 5, 11);
        assert_eq!((&a * &b).precision(), 3);
        assert_eq!((&a * &b).residue(), &BigInt::from(77));
    }
}
