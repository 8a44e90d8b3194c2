//! Number-field routines against independent oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use s3ext::arith::{kronecker, valuation};
use s3ext::number_field::{
    find_fundamental_unit, imaginary_quadratic_class_number, is_fundamental_discriminant, maximal_order_basis,
    prime_splitting_type, primes_above, CubicFieldData, UnitSearchParams,
};
use s3ext::poly::{factor_pattern_mod_p, MonicCubic};

/// Dirichlet's class number formula for d < -4:
/// h = -(1/|d|) * sum_{a=1}^{|d|-1} (d/a) a.
fn dirichlet_class_number(d: i64) -> u64 {
    let n = -d;
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..n).map(|a| kronecker(d as i128, a as u128) as i64 * a).sum();
    let h = -(w * s) / (2 * n);
    assert_eq!(-(w * s) % (2 * n), 0);
    h as u64
}

#[test]
fn class_numbers_match_dirichlet_formula() {
    let mut checked = 0;
    for d in 3..=200i64 {
        let disc = BigInt::from(-d);
        if !is_fundamental_discriminant(&disc) {
            assert!(imaginary_quadratic_class_number(&disc).is_err());
            continue;
        }
        assert_eq!(imaginary_quadratic_class_number(&disc).unwrap(), dirichlet_class_number(-d), "d = -{d}");
        checked += 1;
    }
    assert!(checked > 50);
}

/// Discriminant of the integral basis from the trace form, computed with
/// rational arithmetic on the power basis only.
fn trace_form_discriminant(k: &CubicFieldData) -> BigRational {
    let f = k.f;
    // power sums of the roots via Newton's identities
    let (e1, e2, e3) = ((-f.c2), f.c1, (-f.c0));
    let mut s = vec![BigInt::from(3), BigInt::from(e1)];
    s.push(BigInt::from(e1) * &s[1] - BigInt::from(2 * e2));
    for m in 3..5 {
        let v = BigInt::from(e1) * &s[m - 1] - BigInt::from(e2) * &s[m - 2] + BigInt::from(e3) * &s[m - 3];
        s.push(v);
    }
    let tr = |a: &[BigRational; 3], b: &[BigRational; 3]| -> BigRational {
        let mut t = BigRational::zero();
        for i in 0..3 {
            for j in 0..3 {
                t += &a[i] * &b[j] * BigRational::from_integer(s[i + j].clone());
            }
        }
        t
    };
    let b = &k.integral_basis;
    let g: Vec<Vec<BigRational>> = (0..3).map(|i| (0..3).map(|j| tr(&b[i], &b[j])).collect()).collect();
    &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1]) - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
        + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0])
}

#[test]
fn flagship_field_data() {
    let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
    assert_eq!(k.poly_disc, BigInt::from(-5260));
    assert_eq!(k.field_disc, BigInt::from(-1315));
    assert_eq!(k.index, BigInt::from(2));
    assert_eq!(trace_form_discriminant(&k), BigRational::from_integer(BigInt::from(-1315)));
}

#[test]
fn family_discriminants_are_prime() {
    for (a, p) in [(-1i64, 23i64), (1, 31), (2, 59), (4, 283), (7, 1399), (10, 4027), (11, 5351)] {
        let k = maximal_order_basis(&MonicCubic::new(0, a, 1)).unwrap();
        assert_eq!(k.field_disc, BigInt::from(-p));
        assert!(k.index.is_one());
    }
}

/// Smallest |log| unit by brute force over integral-basis coordinates.
fn brute_force_unit(k: &CubicFieldData, box_size: i64) -> f64 {
    let mut best = f64::INFINITY;
    for a in -box_size..=box_size {
        for b in -box_size..=box_size {
            for c in -box_size..=box_size {
                let coords = [a, b, c];
                let n = k.norm_small(&coords).unwrap();
                if n.abs() != 1 {
                    continue;
                }
                let l = k.real_embedding(&coords.map(BigInt::from)).abs().ln().abs();
                if l > 1e-9 && l < best {
                    best = l;
                }
            }
        }
    }
    best
}

#[test]
fn fundamental_units_match_brute_force() {
    for f in [
        MonicCubic::new(0, 0, -2),
        MonicCubic::new(0, 7, -12),
        MonicCubic::new(0, 1, 1),
        MonicCubic::new(0, 2, 1),
        MonicCubic::new(0, 0, -3),
        MonicCubic::new(1, 2, 3),
    ] {
        let k = maximal_order_basis(&f).unwrap();
        let u = find_fundamental_unit(&k, &UnitSearchParams::default()).unwrap();
        let bf = brute_force_unit(&k, 25);
        assert!((u.log_abs_real - bf).abs() < 1e-9, "{f}: search {} vs brute force {bf}", u.log_abs_real);
        assert!(u.certified, "{f}");
        let p = k.norm(&u.coords);
        assert!(p.abs().is_one());
    }
}

#[test]
fn family_x_is_a_unit_generator_for_small_a() {
    for a in [-1i64, 1, 2, 4, 7] {
        let k = maximal_order_basis(&MonicCubic::new(0, a, 1)).unwrap();
        let x = k.from_integer_poly([0, 1, 0]);
        assert!(k.norm(&x).abs().is_one());
        let u = find_fundamental_unit(&k, &UnitSearchParams::default()).unwrap();
        // x = +-u^m for an integer m
        let lx = k.real_embedding(&x).abs().ln().abs();
        let m = (lx / u.log_abs_real).round();
        assert!((lx - m * u.log_abs_real).abs() < 1e-8);
    }
}

fn cubics() -> impl Strategy<Value = MonicCubic> {
    (-20i64..20, -40i64..40, -60i64..60)
        .prop_map(|(a, b, c)| MonicCubic::new(a, b, c))
        .prop_filter("irreducible", |f| f.rational_root().is_none())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_relation(f in cubics()) {
        let k = maximal_order_basis(&f).unwrap();
        prop_assert_eq!(&k.poly_disc, &(&k.index * &k.index * &k.field_disc));
        prop_assert_eq!(trace_form_discriminant(&k), BigRational::from_integer(k.field_disc.clone()));
        prop_assert_eq!(k.signature, if k.poly_disc.is_positive() { (3, 0) } else { (1, 1) });
        // ramification above q > 3 is tame, so v_q(d_K) <= 2
        for q in [5u64, 7, 11, 13] {
            if !k.field_disc.is_zero() && (&k.field_disc % q).is_zero() {
                prop_assert!(valuation(&k.field_disc, q) <= 2);
            }
        }
    }

    #[test]
    fn splitting_types_are_consistent(f in cubics(), qi in 0usize..8) {
        let q = [2u64, 3, 5, 7, 11, 13, 17, 19][qi];
        let k = maximal_order_basis(&f).unwrap();
        let t = prime_splitting_type(&k, q, true).unwrap();
        prop_assert_eq!(t.degree(), 3);
        prop_assert_eq!(t.is_ramified(), (&k.field_disc % q).is_zero());
        if !(&k.index % q).is_zero() {
            let mut pat = factor_pattern_mod_p(&f.coeffs(), q);
            pat.sort_by(|a, b| b.cmp(a));
            prop_assert_eq!(&t.0, &pat);
            let mut local: Vec<(u32, u32)> = primes_above(&k, q).unwrap().iter().map(|p| (p.e, p.f)).collect();
            local.sort_by(|a, b| b.cmp(a));
            prop_assert_eq!(&t.0, &local);
        }
    }

    #[test]
    fn unit_search_is_normalized(a in 1i64..6, b in -5i64..6) {
        let f = MonicCubic::new(0, a, b);
        prop_assume!(f.rational_root().is_none() && f.discriminant().is_negative());
        let k = maximal_order_basis(&f).unwrap();
        let u = find_fundamental_unit(&k, &UnitSearchParams::default()).unwrap();
        prop_assert!(k.real_embedding(&u.coords).abs() > 1.0);
        let lead = k.to_power_basis(&u.coords).iter().rev().find(|c| !c.is_zero()).unwrap().clone();
        prop_assert!(lead.is_positive());
        prop_assert!(u.log_abs_real.to_f64().unwrap() > 0.28);
    }
}
