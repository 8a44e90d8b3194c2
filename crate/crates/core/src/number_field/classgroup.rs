//! Is the class number of K prime to p?
//!
//! The prime ideals above rational primes up to the Minkowski bound
//! generate Cl(K). Every relation found (principal ideals of small elements
//! and of rational primes) lies in the true relation lattice, so the index
//! of the found lattice is a multiple of h. If the relations already span
//! F_p^n, that index — and hence h — is prime to p.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::lattice::{lll, short_vectors};
use super::local::{primes_above, valuations_at, PrimeIdeal};
use super::{Coords, CubicFieldData, NfError};
use crate::arith::{factor_u128, primes_up_to};
use crate::linalg::{hnf, left_kernel_mod};

pub const DEFAULT_MINKOWSKI_CEILING: f64 = 5000.0;

/// Largest factor base for which the relation index is computed exactly.
const EXACT_INDEX_COLUMNS: usize = 40;

#[derive(Clone, Debug, Serialize)]
pub struct ClassGroupCheck {
    pub p: u64,
    pub minkowski_bound: f64,
    /// Prime ideals as "q^f (e=..)" labels.
    pub factor_base: Vec<String>,
    pub relations: usize,
    pub rank_mod_p: usize,
    /// h divides this number (present when computed).
    pub class_number_divides: Option<String>,
    pub coprime_to_p: bool,
}

pub fn minkowski_bound(k: &CubicFieldData) -> f64 {
    let d = k.field_disc.abs().to_f64().unwrap_or(f64::INFINITY).sqrt();
    let base = 6.0 / 27.0 * d;
    if k.signature.1 == 1 {
        base * 4.0 / std::f64::consts::PI
    } else {
        base
    }
}

pub fn cubic_class_number_prime_to_p(
    k: &CubicFieldData,
    p: u64,
    ceiling: f64,
) -> Result<ClassGroupCheck, NfError> {
    let bound = minkowski_bound(k);
    if bound > ceiling {
        return Err(NfError::BoundTooLarge { bound, ceiling });
    }
    let rational_primes = primes_up_to(bound.floor() as u64);
    let mut groups: Vec<(u64, Vec<PrimeIdeal>, usize)> = Vec::new();
    let mut ncols = 0;
    for &q in &rational_primes {
        let ps = primes_above(k, q)?;
        let n = ps.len();
        groups.push((q, ps, ncols));
        ncols += n;
    }
    let factor_base: Vec<String> = groups
        .iter()
        .flat_map(|(q, ps, _)| ps.iter().map(move |pr| format!("{q}^{} (e={})", pr.f, pr.e)))
        .collect();
    if ncols == 0 {
        return Ok(ClassGroupCheck {
            p,
            minkowski_bound: bound,
            factor_base,
            relations: 0,
            rank_mod_p: 0,
            class_number_divides: Some("1".into()),
            coprime_to_p: true,
        });
    }

    let mut relations: Vec<Vec<i64>> = Vec::new();
    // (q) itself
    for (_, ps, start) in &groups {
        let mut row = vec![0i64; ncols];
        for (i, pr) in ps.iter().enumerate() {
            row[start + i] = pr.e as i64;
        }
        relations.push(row);
    }

    let mut rank = rank_mod(&relations, ncols, p);
    let reduced = lll(k.basis_embeddings());
    let max_q = *rational_primes.last().unwrap();
    let mut t2 = 3.0 * bound.powf(2.0 / 3.0);
    let mut seen = std::collections::HashSet::new();
    let mut rounds = 0;
    while rank < ncols && rounds < 12 {
        rounds += 1;
        for c in short_vectors(&reduced, t2, 50_000) {
            if !seen.insert(c) {
                continue;
            }
            let Some(n) = k.norm_small(&c) else { continue };
            let n = n.unsigned_abs();
            if n <= 1 {
                continue;
            }
            let fac = factor_u128(n);
            if fac.iter().any(|&(q, _)| q > max_q as u128) {
                continue;
            }
            let a: Coords = c.map(BigInt::from);
            let mut row = vec![0i64; ncols];
            for (q, _) in fac {
                let (_, ps, start) = groups.iter().find(|(g, _, _)| *g as u128 == q).unwrap();
                for (i, v) in valuations_at(k, &a, ps).into_iter().enumerate() {
                    row[start + i] = v as i64;
                }
            }
            relations.push(row);
        }
        rank = rank_mod(&relations, ncols, p);
        t2 *= 2.0;
    }
    let class_number_divides = if rank == ncols && ncols <= EXACT_INDEX_COLUMNS {
        let rows: Vec<Vec<BigInt>> = relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = hnf(&rows);
        let idx: BigInt = (0..ncols).map(|i| h[i][i].clone()).fold(BigInt::one(), |a, b| a * b);
        Some(idx.to_string())
    } else {
        None
    };
    Ok(ClassGroupCheck {
        p,
        minkowski_bound: bound,
        factor_base,
        relations: relations.len(),
        rank_mod_p: rank,
        class_number_divides,
        coprime_to_p: rank == ncols,
    })
}

fn rank_mod(rows: &[Vec<i64>], ncols: usize, p: u64) -> usize {
    let m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    // rank = ncols - dim(right kernel); right kernel of M = left kernel of M^T
    let t: Vec<Vec<u64>> = (0..ncols).map(|j| m.iter().map(|r| r[j]).collect()).collect();
    ncols - left_kernel_mod(&t, p).len()
}

#[cfg(test)]
mod tests {
    use super::super::maximal_order_basis;
    use super::*;
    use crate::poly::MonicCubic;

    #[test]
    fn flagship_class_number_prime_to_5() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        let c = cubic_class_number_prime_to_p(&k, 5, DEFAULT_MINKOWSKI_CEILING).unwrap();
        assert!((c.minkowski_bound - 10.3).abs() < 0.1);
        assert!(c.coprime_to_p);
        let h: u64 = c.class_number_divides.unwrap().parse().unwrap();
        assert_ne!(h % 5, 0);
    }

    #[test]
    fn small_discriminant_is_trivial() {
        let k = maximal_order_basis(&MonicCubic::new(0, 1, 1)).unwrap();
        let c = cubic_class_number_prime_to_p(&k, 31, DEFAULT_MINKOWSKI_CEILING).unwrap();
        assert!(c.minkowski_bound < 2.0);
        assert!(c.coprime_to_p);
        assert_eq!(c.class_number_divides.as_deref(), Some("1"));
    }

    #[test]
    fn ceiling_enforced() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        assert!(matches!(cubic_class_number_prime_to_p(&k, 5, 5.0), Err(NfError::BoundTooLarge { .. })));
    }
}
