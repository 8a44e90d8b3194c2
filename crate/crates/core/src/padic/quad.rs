use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{PadicError, PadicInt};
use crate::arith::{big_pow, inv_mod_big, legendre, sqrt_mod_prime_power, valuation};
use crate::poly::{deflate_cubic, zq_roots, MonicCubic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind {
    Unramified,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Uniformizer {
    /// p itself (unramified case).
    P,
    /// sqrt(d) with v_p(d) = 1.
    SqrtD,
}

/// Q_p(sqrt(d)) with `v_p(d)` in {0, 1} and d not a square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalQuadField {
    p: u64,
    d: BigInt,
    kind: QuadKind,
}

impl LocalQuadField {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn kind(&self) -> QuadKind {
        self.kind
    }

    /// Ramification index over Q_p.
    pub fn e(&self) -> u32 {
        match self.kind {
            QuadKind::Unramified => 1,
            QuadKind::Ramified => 2,
        }
    }

    /// Residue degree over Q_p.
    pub fn f(&self) -> u32 {
        2 / self.e()
    }

    pub fn uniformizer(&self) -> Uniformizer {
        match self.kind {
            QuadKind::Unramified => Uniformizer::P,
            QuadKind::Ramified => Uniformizer::SqrtD,
        }
    }

    pub fn residue_field_size(&self) -> BigInt {
        big_pow(self.p, self.f())
    }
}

impl fmt::Display for LocalQuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            QuadKind::Unramified => "unramified",
            QuadKind::Ramified => "ramified",
        };
        write!(f, "Q_{}(sqrt({})) [{kind}, e={}, f={}]", self.p, self.d, self.e(), self.f())
    }
}

/// Classifies Q_p(sqrt(d)).
pub fn make_quadratic_extension(p: u64, d: impl Into<BigInt>) -> Result<LocalQuadField, PadicError> {
    let d = d.into();
    if d.is_zero() {
        return Err(PadicError::SquareDiscriminant);
    }
    let v = valuation(&d, p);
    let kind = match v {
        0 => {
            if legendre(&d, p) == 1 {
                return Err(PadicError::SquareDiscriminant);
            }
            QuadKind::Unramified
        }
        1 => QuadKind::Ramified,
        _ => return Err(PadicError::BadValuation { valuation: v }),
    };
    Ok(LocalQuadField { p, d, kind })
}

/// `a + b*sqrt(d)` with both coordinates known modulo p^precision.
///
/// In the ramified case that is knowledge modulo m^(2*precision); in the
/// unramified case modulo m^precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalQuadElement {
    field: LocalQuadField,
    a: BigInt,
    b: BigInt,
    precision: u32,
    valuation: Option<u32>,
}

impl LocalQuadElement {
    pub fn new(field: &LocalQuadField, a: impl Into<BigInt>, b: impl Into<BigInt>, precision: u32) -> Self {
        assert!(precision >= 1);
        let m = big_pow(field.p, precision);
        let a = a.into().mod_floor(&m);
        let b = b.into().mod_floor(&m);
        let valuation = Self::compute_valuation(field, &a, &b);
        LocalQuadElement { field: field.clone(), a, b, precision, valuation }
    }

    pub fn from_padic(field: &LocalQuadField, x: &PadicInt) -> Self {
        assert_eq!(field.p, x.prime());
        LocalQuadElement::new(field, x.residue().clone(), 0, x.precision())
    }

    pub fn one(field: &LocalQuadField, precision: u32) -> Self {
        LocalQuadElement::new(field, 1, 0, precision)
    }

    fn compute_valuation(field: &LocalQuadField, a: &BigInt, b: &BigInt) -> Option<u32> {
        let va = (!a.is_zero()).then(|| valuation(a, field.p));
        let vb = (!b.is_zero()).then(|| valuation(b, field.p));
        let (wa, wb) = match field.kind {
            QuadKind::Unramified => (va, vb),
            QuadKind::Ramified => (va.map(|v| 2 * v), vb.map(|v| 2 * v + 1)),
        };
        match (wa, wb) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    pub fn field(&self) -> &LocalQuadField {
        &self.field
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Valuation with respect to the uniformizer; `None` means zero to
    /// precision.
    pub fn valuation(&self) -> Option<u32> {
        self.valuation
    }

    /// Number of m-adic digits the coordinates determine.
    pub fn m_precision(&self) -> u32 {
        self.field.e() * self.precision
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        assert!(precision <= self.precision);
        LocalQuadElement::new(&self.field, self.a.clone(), self.b.clone(), precision)
    }

    /// Whether `self ≡ other mod m^k`.
    pub fn congruent_mod_m(&self, other: &LocalQuadElement, k: u32) -> bool {
        assert!(k <= self.m_precision().min(other.m_precision()), "congruence beyond precision");
        match (self - other).valuation() {
            None => true,
            Some(v) => v >= k,
        }
    }

    pub fn conjugate(&self) -> Self {
        LocalQuadElement::new(&self.field, self.a.clone(), -&self.b, self.precision)
    }

    pub fn norm(&self) -> PadicInt {
        PadicInt::new(self.field.p, self.precision, &self.a * &self.a - &self.field.d * &self.b * &self.b)
    }

    pub fn trace(&self) -> PadicInt {
        PadicInt::new(self.field.p, self.precision, 2 * &self.a)
    }

    pub fn pow(&self, exp: &BigInt) -> Self {
        let mut acc = LocalQuadElement::one(&self.field, self.precision);
        let mut base = self.clone();
        let bits = exp.bits();
        for k in 0..bits {
            if exp.bit(k) {
                acc = &acc * &base;
            }
            if k + 1 < bits {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division by `p^k`.
    pub fn div_by_p_power(&self, k: u32) -> Result<Self, PadicError> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.precision {
            return Err(PadicError::PrecisionTooLow { needed: k + 1, available: self.precision });
        }
        let pk = big_pow(self.field.p, k);
        let (qa, ra) = self.a.div_rem(&pk);
        let (qb, rb) = self.b.div_rem(&pk);
        if !ra.is_zero() || !rb.is_zero() {
            return Err(PadicError::NotDivisible { k });
        }
        Ok(LocalQuadElement::new(&self.field, qa, qb, self.precision - k))
    }

    fn combine(&self, rhs: &Self, a: BigInt, b: BigInt) -> Self {
        LocalQuadElement::new(&self.field, a, b, self.precision.min(rhs.precision))
    }

    fn check_field(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "arithmetic across different local fields");
    }
}

impl fmt::Display for LocalQuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({}) mod {}^{}", self.a, self.b, self.field.d, self.field.p, self.precision)
    }
}

impl std::ops::Add for &LocalQuadElement {
    type Output = LocalQuadElement;
    fn add(self, rhs: &LocalQuadElement) -> LocalQuadElement {
        self.check_field(rhs);
        self.combine(rhs, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl std::ops::Sub for &LocalQuadElement {
    type Output = LocalQuadElement;
    fn sub(self, rhs: &LocalQuadElement) -> LocalQuadElement {
        self.check_field(rhs);
        self.combine(rhs, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl std::ops::Mul for &LocalQuadElement {
    type Output = LocalQuadElement;
    fn mul(self, rhs: &LocalQuadElement) -> LocalQuadElement {
        self.check_field(rhs);
        let a = &self.a * &rhs.a + &self.field.d * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        self.combine(rhs, a, b)
    }
}

/// Largest `i <= max_i` with the unit `z` a `p^i`-th power in the unit
/// group of the quadratic extension.
///
/// `z^(q-1)` (q the residue field size) is the 1-unit part of z raised to a
/// p-adic unit, so it is a `p^i`-th power exactly when z is. For p > 3 and
/// e <= 2 there are no p-th roots of unity, and `U^k -> U^(k+e)` under
/// `x -> x^p` is onto for k >= 1, so 1-units that are `p^i`-th powers are
/// exactly `U^(1 + i*e)`. With e = 2 and i = 1 this is the m^3 rule.
pub fn quad_unit_power_index(z: &LocalQuadElement, max_i: u32) -> Result<u32, PadicError> {
    if !z.is_unit() {
        return Err(PadicError::NotUnit);
    }
    if z.precision() < max_i + 1 {
        return Err(PadicError::PrecisionTooLow { needed: max_i + 1, available: z.precision() });
    }
    let e = z.field().e();
    let q_minus_1 = z.field().residue_field_size() - 1u32;
    let w = z.pow(&q_minus_1);
    let diff = &w - &LocalQuadElement::one(z.field(), z.precision());
    Ok(match diff.valuation() {
        None => max_i,
        Some(v) => {
            debug_assert!(v >= 1, "z^(q-1) must be a 1-unit");
            ((v - 1) / e).min(max_i)
        }
    })
}

/// A root of `f` lying in `field` but not in Q_p, to p-adic precision
/// `precision` on both coordinates.
///
/// `f` must factor over Q_p as a linear factor times an irreducible
/// quadratic whose splitting field is `field`. Of the two conjugate roots
/// the one whose `sqrt(d)`-coordinate has leading p-adic digit in
/// `1..=(p-1)/2` is returned.
pub fn quad_embed_cubic_root(
    f: &MonicCubic,
    field: &LocalQuadField,
    precision: u32,
) -> Result<LocalQuadElement, PadicError> {
    let p = field.p;
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(PadicError::NoQuadraticFactor);
    }
    let slack = valuation(&disc, p) + 2;
    let work = precision + slack;
    let roots = zq_roots(&f.coeffs(), p, work);
    if roots.len() != 1 {
        return Err(PadicError::NoQuadraticFactor);
    }
    let m = big_pow(p, work);
    let [gamma, beta, _] = deflate_cubic(f, &roots[0], &m);
    let delta: BigInt = (&beta * &beta - &gamma * 4u32).mod_floor(&m);
    if delta.is_zero() {
        return Err(PadicError::PrecisionTooLow { needed: work + 1, available: work });
    }
    let v = valuation(&delta, p);
    let vd = valuation(field.d(), p);
    if v >= work || (v + vd) % 2 == 1 {
        return Err(PadicError::WrongField);
    }
    // delta / d = p^(v - vd) * unit must be a square in Q_p
    let pv = big_pow(p, v);
    let unit_delta = &delta / &pv;
    let d_unit = field.d() / big_pow(p, vd);
    let ratio_mod = big_pow(p, work - v);
    let ratio = (&unit_delta * inv_mod_big(&d_unit, &ratio_mod).ok_or(PadicError::NotUnit)?).mod_floor(&ratio_mod);
    if legendre(&ratio, p) != 1 {
        return Err(PadicError::WrongField);
    }
    let sqrt_ratio = sqrt_mod_prime_power(&ratio, p, work - v).ok_or(PadicError::WrongField)?;
    // sqrt(delta) = p^((v - vd)/2) * sqrt(ratio) * sqrt(d)
    let s = &sqrt_ratio * big_pow(p, (v - vd) / 2);
    let out_mod = big_pow(p, precision);
    let half = inv_mod_big(&BigInt::from(2), &out_mod).unwrap();
    let a = (-&beta * &half).mod_floor(&out_mod);
    let mut b = (&s * &half).mod_floor(&out_mod);
    if b.is_zero() {
        return Err(PadicError::PrecisionTooLow { needed: precision + 1, available: precision });
    }
    let lead = leading_digit(&b, p);
    if lead > (p - 1) / 2 {
        b = (-b).mod_floor(&out_mod);
    }
    Ok(LocalQuadElement::new(field, a, b, precision))
}

fn leading_digit(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut x = x.clone();
    while x.mod_floor(&pb).is_zero() {
        x /= &pb;
    }
    let d: BigInt = x.mod_floor(&pb);
    u64::try_from(&d).unwrap()
}

/// The quadratic extension of Q_p generated by the non-Q_p roots of `f`,
/// with `d` reduced to valuation 0 or 1.
pub fn splitting_quadratic_field(f: &MonicCubic, p: u64, precision: u32) -> Result<LocalQuadField, PadicError> {
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(PadicError::NoQuadraticFactor);
    }
    let work = precision.max(valuation(&disc, p) + 4);
    let roots = zq_roots(&f.coeffs(), p, work);
    if roots.len() != 1 {
        return Err(PadicError::NoQuadraticFactor);
    }
    let m = big_pow(p, work);
    let [gamma, beta, _] = deflate_cubic(f, &roots[0], &m);
    let delta: BigInt = (&beta * &beta - &gamma * 4u32).mod_floor(&m);
    if delta.is_zero() {
        return Err(PadicError::PrecisionTooLow { needed: work + 1, available: work });
    }
    let v = valuation(&delta, p);
    let unit = &delta / big_pow(p, v);
    // keep a small representative of the square class
    let pb = BigInt::from(p);
    let unit_small = if legendre(&unit, p) == 1 {
        BigInt::one()
    } else {
        let mut n = BigInt::from(2);
        while legendre(&n, p) != -1 {
            n += 1;
        }
        n
    };
    let _ = pb;
    let d = if v % 2 == 1 { unit_small * BigInt::from(p) } else { unit_small };
    make_quadratic_extension(p, d)
}
