//! Primes of K above a rational prime.
//!
//! Primes of degree one correspond to roots of f in Z_q; at most one prime
//! is left over, and its (e, f) follows from whether q ramifies. This works
//! whether or not q divides the index, so it doubles as the fallback when
//! Dedekind–Kummer does not apply.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{Coords, CubicFieldData, NfError};
use crate::arith::{is_prime_u128, valuation};
use crate::poly::{factor_pattern_mod_p, zq_roots};

/// Multiset of (e, f) pairs, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplittingType(pub Vec<(u32, u32)>);

impl SplittingType {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_by(|a, b| b.cmp(a));
        SplittingType(pairs)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(e, f)| e * f).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.0.iter().any(|&(e, _)| e > 1)
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(e, g)| format!("({e},{g})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PrimeKind {
    /// Degree-one prime attached to a root of f in Z_q.
    Root(BigInt),
    /// The unique prime not attached to a root.
    Residual,
}

/// A prime ideal of the maximal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub q: u64,
    pub e: u32,
    pub f: u32,
    kind: PrimeKind,
    precision: u32,
}

impl PrimeIdeal {
    pub fn norm_exponent(&self) -> u32 {
        self.f
    }

    /// The Z_q root for a degree-one prime.
    pub fn root(&self) -> Option<&BigInt> {
        match &self.kind {
            PrimeKind::Root(r) => Some(r),
            PrimeKind::Residual => None,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

fn root_precision(k: &CubicFieldData, q: u64) -> u32 {
    let vd = valuation(&k.poly_disc, q);
    let bits = 64 - q.leading_zeros();
    vd + valuation(k.basis_denominator(), q) + 128 / bits + 4
}

/// All primes of K above q.
pub fn primes_above(k: &CubicFieldData, q: u64) -> Result<Vec<PrimeIdeal>, NfError> {
    if !is_prime_u128(q as u128) {
        return Err(NfError::NotPrime { q });
    }
    let prec = root_precision(k, q);
    let roots = zq_roots(&k.f.coeffs(), q, prec);
    let mut out: Vec<PrimeIdeal> = roots
        .into_iter()
        .map(|r| PrimeIdeal { q, e: 1, f: 1, kind: PrimeKind::Root(r), precision: prec })
        .collect();
    let rest = 3 - out.len() as u32;
    if rest > 0 {
        let ramified = k.field_disc.mod_floor(&BigInt::from(q)).is_zero();
        let (e, f) = if ramified { (rest, 1) } else { (1, rest) };
        out.push(PrimeIdeal { q, e, f, kind: PrimeKind::Residual, precision: prec });
    }
    Ok(out)
}

/// Valuations of a nonzero element at every prime in `primes` (all above
/// the same q).
pub fn valuations_at(k: &CubicFieldData, a: &Coords, primes: &[PrimeIdeal]) -> Vec<u32> {
    let Some(first) = primes.first() else { return Vec::new() };
    let q = first.q;
    let vn = valuation(&k.norm(a), q);
    let mut out = vec![0u32; primes.len()];
    let mut used = 0;
    let mut residual = None;
    for (i, pr) in primes.iter().enumerate() {
        match &pr.kind {
            PrimeKind::Root(r) => {
                let x = k.eval_at_zq_root(a, q, r, pr.precision);
                let v = x.valuation().expect("valuation beyond working precision");
                out[i] = v;
                used += v;
            }
            PrimeKind::Residual => residual = Some(i),
        }
    }
    if let Some(i) = residual {
        let rem = vn - used;
        debug_assert_eq!(rem % primes[i].f, 0);
        out[i] = rem / primes[i].f;
    }
    out
}

/// Splitting type of q in K. For q dividing the index the q-adic
/// factorization is used when `allow_index_fallback` is set.
pub fn prime_splitting_type(
    k: &CubicFieldData,
    q: u64,
    allow_index_fallback: bool,
) -> Result<SplittingType, NfError> {
    if !is_prime_u128(q as u128) {
        return Err(NfError::NotPrime { q });
    }
    if !k.index.mod_floor(&BigInt::from(q)).is_zero() {
        let pattern = factor_pattern_mod_p(&k.f.coeffs(), q);
        return Ok(SplittingType::new(pattern));
    }
    if !allow_index_fallback {
        return Err(NfError::IndexDivisor { q });
    }
    Ok(SplittingType::new(primes_above(k, q)?.iter().map(|p| (p.e, p.f)).collect()))
}

#[cfg(test)]
mod tests {
    use super::super::maximal_order_basis;
    use super::*;
    use crate::poly::MonicCubic;

    #[test]
    fn flagship_splitting() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        assert_eq!(prime_splitting_type(&k, 5, false).unwrap(), SplittingType(vec![(2, 1), (1, 1)]));
        assert_eq!(prime_splitting_type(&k, 263, false).unwrap(), SplittingType(vec![(2, 1), (1, 1)]));
        assert_eq!(prime_splitting_type(&k, 2, false), Err(NfError::IndexDivisor { q: 2 }));
        let t = prime_splitting_type(&k, 2, true).unwrap();
        assert_eq!(t.degree(), 3);
        assert!(!t.is_ramified());
    }

    #[test]
    fn inert_prime() {
        let k = maximal_order_basis(&MonicCubic::new(0, 1, 1)).unwrap();
        assert_eq!(prime_splitting_type(&k, 2, false).unwrap(), SplittingType(vec![(1, 3)]));
    }

    #[test]
    fn fallback_agrees_with_dedekind() {
        for f in [MonicCubic::new(0, 7, -12), MonicCubic::new(0, 1, 1), MonicCubic::new(1, -2, 5)] {
            let k = maximal_order_basis(&f).unwrap();
            for q in [3u64, 5, 7, 11, 13, 31, 263] {
                if k.index.mod_floor(&BigInt::from(q)).is_zero() {
                    continue;
                }
                let a = prime_splitting_type(&k, q, false).unwrap();
                let b = SplittingType::new(primes_above(&k, q).unwrap().iter().map(|p| (p.e, p.f)).collect());
                assert_eq!(a, b, "f = {f}, q = {q}");
            }
        }
    }

    #[test]
    fn valuations_sum_to_norm() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        for q in [2u64, 3, 5, 7] {
            let primes = primes_above(&k, q).unwrap();
            for c in [[1i64, 2, 3], [4, 0, -1], [10, 5, 5]] {
                let a: Coords = c.map(BigInt::from);
                let n = k.norm(&a);
                let vs = valuations_at(&k, &a, &primes);
                let total: u32 = vs.iter().zip(&primes).map(|(v, p)| v * p.f).sum();
                assert_eq!(total, valuation(&n, q));
            }
        }
    }
}
