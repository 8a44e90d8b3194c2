use std::collections::HashSet;

use proptest::prelude::*;
use s3ext::s3::{
    build_degenerate_model, check_model, direct_sum, elements, isotypic_decompose, permutation_module,
    regular_module, sign_module, standard_module, IsotypicType, S3Module, Vector, ZMod,
};

/// All elements of the subgroup generated by two vectors, by enumeration.
fn enumerate_span(z: &ZMod, g: &[Vector]) -> HashSet<Vector> {
    let mut out = HashSet::new();
    for x in 0..z.q {
        for y in 0..z.q {
            out.insert((0..g[0].len()).map(|c| z.add(z.mul(x, g[0][c]), z.mul(y, g[1][c]))).collect());
        }
    }
    out
}

/// Additive order of a vector.
fn order(z: &ZMod, v: &Vector) -> u64 {
    let v_min = v.iter().map(|&x| z.valuation(x)).min().unwrap();
    z.p.pow(z.j - v_min)
}

/// (|G|, exponent of G) for a finite abelian p-group given as a set.
fn size_and_exponent(z: &ZMod, s: &HashSet<Vector>) -> (u64, u64) {
    (s.len() as u64, s.iter().map(|v| order(z, v)).max().unwrap_or(1))
}

#[test]
fn intersections_match_enumeration() {
    for p in [5u64, 7] {
        for j in 1..=3u32 {
            for i in 0..=3u32 {
                let m = build_degenerate_model(p, j, i).unwrap();
                let z = m.ring;
                let sets: Vec<HashSet<Vector>> = (0..3).map(|k| enumerate_span(&z, &m.image_of(k))).collect();
                let l = i.min(j);
                let expected = (p.pow(l), p.pow(l));
                for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                    let inter: HashSet<Vector> = sets[a].intersection(&sets[b]).cloned().collect();
                    // cyclic of order p^l: order equals exponent
                    assert_eq!(size_and_exponent(&z, &inter), expected, "p={p} j={j} i={i} pair {a}{b}");
                }
                let triple: HashSet<Vector> =
                    sets[0].iter().filter(|v| sets[1].contains(*v) && sets[2].contains(*v)).cloned().collect();
                assert_eq!(size_and_exponent(&z, &triple), expected);
                let c = check_model(p, j, i).unwrap();
                assert!(c.passed, "{c:?}");
                assert_eq!(c.inertia.is_some(), i >= j);
            }
        }
    }
}

#[test]
fn cokernel_is_v_plus_chi() {
    for (p, j, i) in [(5, 1, 0), (5, 2, 1), (7, 3, 5), (11, 2, 2)] {
        let m = build_degenerate_model(p, j, i).unwrap();
        assert!(m.exactness_holds());
        let z = m.ring;
        let v_chi = direct_sum(&permutation_module(z).unwrap(), &sign_module(z).unwrap());
        assert_eq!(isotypic_decompose(&m.p_module).unwrap(), isotypic_decompose(&v_chi).unwrap());
        // |P| = |sum| / |E| by counting
        assert_eq!(z.log_size(&m.p_module.whole(), 4), 6 * j - 2 * j);
    }
}

fn sum_of(z: &ZMod, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| z.add(x, y)).collect()).collect()
}

fn modules(z: ZMod) -> Vec<S3Module> {
    let reg = regular_module(z).unwrap();
    let v = permutation_module(z).unwrap();
    let e = standard_module(z).unwrap();
    vec![direct_sum(&v, &e), reg, direct_sum(&sign_module(z).unwrap(), &e), build_degenerate_model(z.p, z.j, 1).unwrap().p_module]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn idempotents_are_orthogonal(p in prop::sample::select(vec![5u64, 7, 11, 13]), j in 1u32..=3) {
        let z = ZMod::new(p, j);
        for m in modules(z) {
            let [e1, ec, ee] = m.idempotents();
            let id = z.identity(m.rank);
            prop_assert_eq!(sum_of(&z, &sum_of(&z, &e1, &ec), &ee), id);
            let zero = vec![vec![0; m.rank]; m.rank];
            for (a, b) in [(&e1, &ec), (&e1, &ee), (&ec, &ee)] {
                prop_assert_eq!(z.mat_mul(a, b), zero.clone());
            }
            for e in [&e1, &ec, &ee] {
                prop_assert_eq!(&z.mat_mul(e, e), e);
            }
        }
    }

    #[test]
    fn decomposition_survives_reduction(p in prop::sample::select(vec![5u64, 7, 11]), j in 1u32..=3) {
        let z = ZMod::new(p, j);
        for m in modules(z) {
            let full = isotypic_decompose(&m).unwrap();
            prop_assert_eq!(full, isotypic_decompose(&m.reduce_mod_p()).unwrap());
            prop_assert_eq!(full.rank(), m.rank);
        }
    }

    #[test]
    fn group_matrices_form_a_representation(p in prop::sample::select(vec![5u64, 7]), j in 1u32..=2) {
        let z = ZMod::new(p, j);
        for m in modules(z) {
            for (_, _, g) in elements() {
                for (_, _, h) in elements() {
                    prop_assert_eq!(m.act(g.compose(h)), z.mat_mul(&m.act(g), &m.act(h)));
                }
            }
        }
    }
}

#[test]
fn regular_and_local_types() {
    let z = ZMod::new(7, 2);
    assert_eq!(isotypic_decompose(&regular_module(z).unwrap()).unwrap(), IsotypicType::new(1, 1, 2));
}
