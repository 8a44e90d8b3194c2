//! Power-index routines checked against brute-force enumeration of
//! `p^i`-th powers in finite quotients of the unit groups.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use s3ext::padic::{
    hensel_lift_root, make_quadratic_extension, pth_power_index_qp, quad_unit_power_index, LocalQuadElement,
    LocalQuadField, PadicInt,
};
use s3ext::poly::MonicCubic;

fn pow_u64(b: u64, e: u32) -> u64 {
    b.pow(e)
}

/// For each i in 0..=max_i the set of `p^i`-th powers of units mod p^n.
fn qp_power_sets(p: u64, n: u32, max_i: u32) -> Vec<HashSet<u64>> {
    let m = pow_u64(p, n);
    (0..=max_i)
        .map(|i| {
            let e = pow_u64(p, i);
            (1..m)
                .filter(|x| x % p != 0)
                .map(|x| {
                    let mut acc = 1u128;
                    for _ in 0..e {
                        acc = acc * x as u128 % m as u128;
                    }
                    acc as u64
                })
                .collect()
        })
        .collect()
}

#[test]
fn qp_index_matches_enumeration() {
    for p in [5u64, 7] {
        let n = 4;
        let max_i = n - 1;
        let sets = qp_power_sets(p, n, max_i);
        let m = pow_u64(p, n);
        for z in (1..m).filter(|z| z % p != 0) {
            let expect = (0..=max_i).rev().find(|&i| sets[i as usize].contains(&z)).unwrap();
            let got = pth_power_index_qp(&PadicInt::new(p, n, z), max_i).unwrap();
            assert_eq!(got, expect, "p = {p}, z = {z}");
        }
    }
}

type Pair = (u64, u64);

fn quad_mul(x: Pair, y: Pair, d: i64, m: u64) -> Pair {
    let m = m as i128;
    let (a, b) = (x.0 as i128, x.1 as i128);
    let (c, e) = (y.0 as i128, y.1 as i128);
    let r = (a * c + d as i128 * b * e).rem_euclid(m);
    let s = (a * e + b * c).rem_euclid(m);
    (r as u64, s as u64)
}

fn quad_oracle(p: u64, d: i64, n: u32) {
    let field: LocalQuadField = make_quadratic_extension(p, d).unwrap();
    let m = pow_u64(p, n);
    let is_unit = |(a, b): Pair| match field.e() {
        2 => a % p != 0,
        _ => a % p != 0 || b % p != 0,
    };
    let units: Vec<Pair> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&x| is_unit(x)).collect();
    // the p^i-th power condition on units of Q_p(sqrt d) is determined
    // modulo m^(1 + e*i), which the precision covers for i <= n - 1
    let max_i = n - 1;
    let mut sets: Vec<HashSet<Pair>> = Vec::new();
    let mut current: Vec<Pair> = units.clone();
    for i in 0..=max_i {
        if i > 0 {
            current = current
                .iter()
                .map(|&x| {
                    let mut acc = (1, 0);
                    for _ in 0..p {
                        acc = quad_mul(acc, x, d, m);
                    }
                    acc
                })
                .collect();
        }
        sets.push(current.iter().copied().collect());
    }
    for &(a, b) in &units {
        let expect = (0..=max_i).rev().find(|&i| sets[i as usize].contains(&(a, b))).unwrap();
        let z = LocalQuadElement::new(&field, a, b, n);
        let got = quad_unit_power_index(&z, max_i).unwrap();
        assert_eq!(got, expect, "p = {p}, d = {d}, z = {a} + {b}*sqrt(d)");
    }
}

#[test]
fn quad_index_matches_enumeration_ramified_5() {
    quad_oracle(5, 10, 3);
}

#[test]
fn quad_index_matches_enumeration_unramified_5() {
    quad_oracle(5, 2, 3);
}

#[test]
fn quad_index_matches_enumeration_ramified_7() {
    quad_oracle(7, 7, 2);
}

#[test]
fn quad_index_matches_enumeration_unramified_7() {
    quad_oracle(7, 3, 2);
}

#[test]
fn m_cubed_rule_in_q5_sqrt10() {
    // a 1-unit of Q_5(sqrt 10) is a 5th power iff it is 1 mod m^3
    let field = make_quadratic_extension(5, 10).unwrap();
    let one = LocalQuadElement::one(&field, 3);
    for a in 0..25u64 {
        for b in 0..25u64 {
            let z = LocalQuadElement::new(&field, 1 + 5 * a, 5 * b, 3);
            let in_u3 = z.congruent_mod_m(&one, 3);
            let z1 = LocalQuadElement::new(&field, 1 + 5 * a, b, 3);
            let z1_in_u3 = z1.congruent_mod_m(&one, 3);
            assert_eq!(quad_unit_power_index(&z, 1).unwrap() == 1, in_u3);
            assert_eq!(quad_unit_power_index(&z1, 1).unwrap() == 1, z1_in_u3);
        }
    }
}

proptest! {
    #[test]
    fn hensel_lift_is_a_root(c2 in -30i64..30, c1 in -30i64..30, c0 in -30i64..30, pi in 0usize..4, n in 1u32..8) {
        let p = [5u64, 7, 11, 13][pi];
        let f = MonicCubic::new(c2, c1, c0);
        for r0 in 0..p {
            if let Ok(r) = hensel_lift_root(&f, p, &BigInt::from(r0), n) {
                let m = r.modulus();
                let val = f.eval(r.residue()) % &m;
                prop_assert!(val.is_zero());
                prop_assert!(r.congruent_mod(&BigInt::from(r0), 1));
            }
        }
    }

    #[test]
    fn pth_power_raises_index(z in 1u64..15625, pi in 0usize..2) {
        let p = [5u64, 7][pi];
        let n = 6;
        let u = PadicInt::new(p, n, z);
        prop_assume!(u.is_unit());
        let max_i = 4;
        let i = pth_power_index_qp(&u, max_i).unwrap();
        let up = u.pow(&BigInt::from(p));
        let j = pth_power_index_qp(&up, max_i).unwrap();
        prop_assert_eq!(j, (i + 1).min(max_i));
        // multiplying by a Teichmueller-like root of unity does not change it
        let zeta = PadicInt::new(p, n, 2).pow(&BigInt::from(pow_u64(p, n)));
        let k = pth_power_index_qp(&(&u * &zeta), max_i).unwrap();
        prop_assert_eq!(k, i);
    }

    #[test]
    fn index_is_stable_under_extra_precision(z in 1u64..390625, pi in 0usize..2, max_i in 1u32..4) {
        let p = [5u64, 7][pi];
        let hi = PadicInt::new(p, 8, z);
        prop_assume!(hi.is_unit());
        let lo = hi.with_precision(max_i + 1);
        prop_assert_eq!(pth_power_index_qp(&hi, max_i).unwrap(), pth_power_index_qp(&lo, max_i).unwrap());
        // a lower probe limit caps the index
        let full = pth_power_index_qp(&hi, 4).unwrap();
        prop_assert_eq!(pth_power_index_qp(&hi, max_i).unwrap(), full.min(max_i));
    }

    #[test]
    fn quad_norm_is_multiplicative(a1 in 0u64..625, b1 in 0u64..625, a2 in 0u64..625, b2 in 0u64..625) {
        let field = make_quadratic_extension(5, 10).unwrap();
        let x = LocalQuadElement::new(&field, a1, b1, 4);
        let y = LocalQuadElement::new(&field, a2, b2, 4);
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        let ones = LocalQuadElement::one(&field, 4);
        prop_assert_eq!(&x * &ones, x.clone());
        prop_assert!(x.pow(&BigInt::one()) == x);
    }
}
