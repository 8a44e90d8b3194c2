//! Z/p^N[T1, T2, T3] modulo monomials of total degree > D.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::DeformError;
use crate::arith::inv_mod;
use crate::padic::PadicInt;

pub type Exponent = [u32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeriesRing {
    pub p: u64,
    /// p-adic precision N.
    pub n: u32,
    /// Total-degree cutoff D.
    pub d: u32,
    q: u64,
}

impl SeriesRing {
    pub fn new(p: u64, n: u32, d: u32) -> Result<SeriesRing, DeformError> {
        if p <= 3 || !crate::arith::is_prime_u128(p as u128) || n == 0 {
            return Err(DeformError::BadParameters(format!("p = {p}, N = {n}")));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q < (1 << 62))
            .ok_or_else(|| DeformError::BadParameters(format!("{p}^{n} does not fit in 62 bits")))?;
        Ok(SeriesRing { p, n, d, q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    pub fn reduce_big(&self, x: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        ((x % &q + &q) % &q).to_u64().unwrap()
    }

    /// A rational whose denominator is prime to p, reduced mod p^N.
    pub fn reduce_rational(&self, x: &BigRational) -> Result<u64, DeformError> {
        let den = self.reduce_big(x.denom());
        let inv = inv_mod(den as u128, self.q as u128).ok_or(DeformError::NotUnit)?;
        Ok(self.mul(self.reduce_big(x.numer()), inv as u64))
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        inv_mod(a as u128, self.q as u128).map(|x| x as u64)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn zero(&self) -> TruncSeries {
        TruncSeries { ring: *self, coeffs: BTreeMap::new() }
    }

    pub fn constant(&self, c: i64) -> TruncSeries {
        self.monomial([0, 0, 0], self.reduce_i64(c))
    }

    pub fn one(&self) -> TruncSeries {
        self.constant(1)
    }

    /// T_{i+1}.
    pub fn var(&self, i: usize) -> TruncSeries {
        let mut e = [0; 3];
        e[i] = 1;
        self.monomial(e, 1)
    }

    pub fn monomial(&self, e: Exponent, c: u64) -> TruncSeries {
        let mut s = self.zero();
        s.set(e, c);
        s
    }

    /// Parse a polynomial such as `T3 - 3/2*T1*T3^2 + 4`.
    pub fn parse(&self, text: &str) -> Result<TruncSeries, DeformError> {
        let bad = |why: &str| DeformError::Parse(format!("{text:?}: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = true;
            } else if ch != '+' {
                current.push(ch);
            }
        }
        terms.push((negative, current));
        let mut out = self.zero();
        for (negative, term) in terms {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = BigRational::one();
            let mut e = [0u32; 3];
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('T') {
                    let (var, pow) = match rest.split_once('^') {
                        Some((v, k)) => (v, k.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx = match var {
                        "1" => 0,
                        "2" => 1,
                        "3" => 2,
                        _ => return Err(bad("variables are T1, T2, T3")),
                    };
                    e[idx] += pow;
                } else {
                    let c: BigRational = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= c;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out = out.add(&self.monomial(e, self.reduce_rational(&coeff)?));
        }
        Ok(out)
    }
}

/// Element of [`SeriesRing`]; absent exponents are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    ring: SeriesRing,
    coeffs: BTreeMap<Exponent, u64>,
}

fn degree(e: &Exponent) -> u32 {
    e.iter().sum()
}

impl TruncSeries {
    pub fn ring(&self) -> SeriesRing {
        self.ring
    }

    pub fn coefficient(&self, e: Exponent) -> u64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &u64)> {
        self.coeffs.iter()
    }

    fn set(&mut self, e: Exponent, c: u64) {
        let c = c % self.ring.q;
        if degree(&e) > self.ring.d || c == 0 {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn constant_term(&self) -> u64 {
        self.coefficient([0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &TruncSeries) {
        assert_eq!(self.ring, other.ring, "series from different rings");
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        self.check(other);
        let mut out = self.clone();
        for (e, &c) in &other.coeffs {
            let v = self.ring.add(out.coefficient(*e), c);
            out.set(*e, v);
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        let r = self.ring;
        TruncSeries { ring: r, coeffs: self.coeffs.iter().map(|(e, &c)| (*e, r.neg(c))).collect() }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> TruncSeries {
        let mut out = self.ring.zero();
        for (e, &x) in &self.coeffs {
            out.set(*e, self.ring.mul(c, x));
        }
        out
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        self.check(other);
        let r = self.ring;
        let mut acc: BTreeMap<Exponent, u64> = BTreeMap::new();
        for (e1, &c1) in &self.coeffs {
            for (e2, &c2) in &other.coeffs {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                if degree(&e) > r.d {
                    continue;
                }
                let slot = acc.entry(e).or_insert(0);
                *slot = r.add(*slot, r.mul(c1, c2));
            }
        }
        acc.retain(|_, c| *c != 0);
        TruncSeries { ring: r, coeffs: acc }
    }

    pub fn pow(&self, k: u32) -> TruncSeries {
        (0..k).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    /// Sum of `c_k x^k` for k = 0..=D, x with zero constant term.
    fn compose_nilpotent(x: &TruncSeries, coeffs: &[u64]) -> TruncSeries {
        debug_assert_eq!(x.constant_term(), 0);
        let r = x.ring;
        let mut out = r.zero();
        let mut power = r.one();
        for &c in coeffs.iter().take(r.d as usize + 1) {
            out = out.add(&power.scale(c));
            power = power.mul(x);
            if power.is_zero() {
                break;
            }
        }
        out
    }

    pub fn invert(&self) -> Result<TruncSeries, DeformError> {
        let r = self.ring;
        let c0 = self.constant_term();
        let c_inv = r.inv(c0).ok_or(DeformError::NotUnit)?;
        // x = c0 (1 + y)  =>  1/x = c0^{-1} sum (-y)^k
        let y = self.scale(c_inv).sub(&r.one());
        let alternating: Vec<u64> = (0..=r.d).map(|k| if k % 2 == 0 { 1 } else { r.neg(1) }).collect();
        Ok(Self::compose_nilpotent(&y, &alternating).scale(c_inv))
    }

    /// Square root with constant term 1 of a series with constant term 1,
    /// by the binomial series of (1 + y)^{1/2}.
    pub fn sqrt_one_unit(&self) -> Result<TruncSeries, DeformError> {
        let r = self.ring;
        if self.constant_term() != 1 {
            return Err(DeformError::BadConstantTerm { found: self.constant_term() });
        }
        let y = self.sub(&r.one());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut c = BigRational::one();
        let mut coeffs = Vec::new();
        for k in 0..=r.d {
            coeffs.push(r.reduce_rational(&c)?);
            c = c * (&half - BigInt::from(k)) / BigInt::from(k + 1);
        }
        Ok(Self::compose_nilpotent(&y, &coeffs))
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> TruncSeries {
        TruncSeries {
            ring: self.ring,
            coeffs: self.coeffs.iter().filter(|(e, _)| degree(e) == k).map(|(e, &c)| (*e, c)).collect(),
        }
    }

    /// Image in a coarser ring (smaller N and/or D).
    pub fn truncate(&self, target: SeriesRing) -> TruncSeries {
        assert!(target.p == self.ring.p && target.n <= self.ring.n && target.d <= self.ring.d);
        let mut out = target.zero();
        for (e, &c) in &self.coeffs {
            out.set(*e, c);
        }
        out
    }

    /// Least exponent (in the map order) where the two series differ.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<(Exponent, u64, u64)> {
        self.check(other);
        let keys: std::collections::BTreeSet<&Exponent> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter()
            .map(|e| (*e, self.coefficient(*e), other.coefficient(*e)))
            .find(|(_, a, b)| a != b)
    }

    /// Substitute T_i = t_i (p-adic integers of precision >= N).
    pub fn evaluate(&self, point: &[PadicInt; 3]) -> PadicInt {
        let r = self.ring;
        let q = BigInt::from(r.q);
        let t: Vec<BigInt> = point.iter().map(|x| x.residue() % &q).collect();
        let mut acc = BigInt::zero();
        for (e, &c) in &self.coeffs {
            let mut term = BigInt::from(c);
            for i in 0..3 {
                term = term * t[i].modpow(&BigInt::from(e[i]), &q) % &q;
            }
            acc = (acc + term) % &q;
        }
        if acc.is_negative() {
            acc += &q;
        }
        PadicInt::new(r.p, r.n, acc)
    }

    fn signed(&self, c: u64) -> i128 {
        if c > self.ring.q / 2 {
            c as i128 - self.ring.q as i128
        } else {
            c as i128
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {}^{}, deg <= {})", self.ring.p, self.ring.n, self.ring.d)
    }
}

impl fmt::Display for TruncSeries {
    /// Coefficients in the symmetric range, e.g. `1 - T3^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in &self.coeffs {
            let c = self.signed(c);
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("T{}", i + 1) } else { format!("T{}^{}", i + 1, e[i]) })
                .collect();
            let mono = mono.join("*");
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (mag, mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// 2x2 matrix over a [`SeriesRing`], entries `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub entries: [[TruncSeries; 2]; 2],
}

impl Mat2 {
    pub fn new(a: TruncSeries, b: TruncSeries, c: TruncSeries, d: TruncSeries) -> Mat2 {
        for x in [&b, &c, &d] {
            a.check(x);
        }
        Mat2 { entries: [[a, b], [c, d]] }
    }

    pub fn ring(&self) -> SeriesRing {
        self.entries[0][0].ring
    }

    pub fn identity(r: &SeriesRing) -> Mat2 {
        Mat2::new(r.one(), r.zero(), r.zero(), r.one())
    }

    pub fn constant(r: &SeriesRing, m: [[u64; 2]; 2]) -> Mat2 {
        let c = |x: u64| r.monomial([0, 0, 0], x);
        Mat2::new(c(m[0][0]), c(m[0][1]), c(m[1][0]), c(m[1][1]))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = |i: usize, k: usize| self.entries[i][0].mul(&o.entries[0][k]).add(&self.entries[i][1].mul(&o.entries[1][k]));
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn pow(&self, k: u32) -> Mat2 {
        (0..k).fold(Mat2::identity(&self.ring()), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> TruncSeries {
        let [[a, b], [c, d]] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn trace(&self) -> TruncSeries {
        self.entries[0][0].add(&self.entries[1][1])
    }

    pub fn inverse(&self) -> Result<Mat2, DeformError> {
        let inv_det = self.det().invert()?;
        let [[a, b], [c, d]] = &self.entries;
        Ok(Mat2::new(d.mul(&inv_det), b.neg().mul(&inv_det), c.neg().mul(&inv_det), a.mul(&inv_det)))
    }

    /// Reduction modulo the maximal ideal (p, T1, T2, T3).
    pub fn residual(&self) -> [[u64; 2]; 2] {
        let p = self.ring().p;
        std::array::from_fn(|i| std::array::from_fn(|k| self.entries[i][k].constant_term() % p))
    }

    pub fn truncate(&self, target: SeriesRing) -> Mat2 {
        let t = |x: &TruncSeries| x.truncate(target);
        let [[a, b], [c, d]] = &self.entries;
        Mat2::new(t(a), t(b), t(c), t(d))
    }

    /// First entry (row-major) and exponent where the matrices differ.
    pub fn first_difference(&self, o: &Mat2) -> Option<((usize, usize), Exponent, u64, u64)> {
        for i in 0..2 {
            for k in 0..2 {
                if let Some((e, x, y)) = self.entries[i][k].first_difference(&o.entries[i][k]) {
                    return Some(((i, k), e, x, y));
                }
            }
        }
        None
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> SeriesRing {
        SeriesRing::new(5, 6, 6).unwrap()
    }

    #[test]
    fn geometric_series() {
        let r = ring();
        let x = r.one().add(&r.var(0));
        let inv = x.invert().unwrap();
        for k in 0..=6u32 {
            let expected = if k % 2 == 0 { 1 } else { r.modulus() - 1 };
            assert_eq!(inv.coefficient([k, 0, 0]), expected);
        }
        assert_eq!(x.mul(&inv), r.one());
        let y = r.one().sub(&r.var(0));
        assert_eq!(x.mul(&y), r.one().sub(&r.var(0).pow(2)));
        assert_eq!(r.var(0).invert(), Err(DeformError::NotUnit));
    }

    #[test]
    fn sqrt_of_one_minus_three_t3_squared() {
        let r = ring();
        let x = r.one().sub(&r.var(2).pow(2).scale(3));
        let s = x.sqrt_one_unit().unwrap();
        assert_eq!(s.mul(&s), x);
        // 1 - (3/2) T3^2 - (9/8) T3^4 - (27/16) T3^6
        let frac = |n: i64, d: i64| r.reduce_rational(&BigRational::new(n.into(), d.into())).unwrap();
        assert_eq!(s.coefficient([0, 0, 2]), frac(-3, 2));
        assert_eq!(s.coefficient([0, 0, 4]), frac(-9, 8));
        assert_eq!(s.coefficient([0, 0, 6]), frac(-27, 16));
        assert_eq!(r.one().sqrt_one_unit().unwrap(), r.one());
        assert!(matches!(r.constant(4).sqrt_one_unit(), Err(DeformError::BadConstantTerm { .. })));
    }

    #[test]
    fn parse_roundtrip() {
        let r = ring();
        let x = r.parse("1 - 3*T3^2 + T1*T2").unwrap();
        assert_eq!(x.to_string(), "1 - 3*T3^2 + T1*T2");
        let y = r.parse("-T3 + 1/2*T3*T1").unwrap();
        assert_eq!(y.mul(&r.constant(2)), r.parse("-2*T3 + T1*T3").unwrap());
        assert!(r.parse("T4").is_err());
        assert!(r.parse("1 +").is_err());
    }

    #[test]
    fn display() {
        let r = ring();
        let x = r.one().sub(&r.var(2).pow(2).scale(3)).add(&r.var(0).mul(&r.var(1)));
        assert_eq!(x.to_string(), "1 - 3*T3^2 + T1*T2");
    }
}
