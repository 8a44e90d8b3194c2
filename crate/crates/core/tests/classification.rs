use num_bigint::BigInt;
use proptest::prelude::*;
use s3ext::classification::{classify_extension, degeneracy_index, ClassifyError, ClassifyParams};
use s3ext::poly::MonicCubic;

fn params() -> ClassifyParams {
    ClassifyParams::default()
}

#[test]
fn flagship_report_contents() {
    let r = classify_extension(&MonicCubic::new(0, 7, -12), 5, &params());
    println!("{}", r.render_text());
    let n = r.neatness.as_ref().unwrap();
    assert!(n.condition1.holds && n.condition2.holds && n.condition3.holds);
    assert_eq!(n.p_splitting, "[(2,1),(1,1)]");
    assert_eq!(n.unit_index_at_ramified_place, 0);
    assert_eq!(n.class_numbers.quadratic_discriminant, "-1315");
    assert_eq!(n.class_numbers.h_quadratic, 6);
    let q263 = n.ramified.iter().find(|e| e.q == 263).unwrap();
    assert!(!q263.contains_pth_roots_of_unity);
    assert_eq!(r.field_disc.as_deref(), Some("-1315"));
    assert_eq!(r.degeneracy_index, Some(1));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["degeneracy_index"], 1);
    assert_eq!(json["neat"], true);
}

#[test]
fn family_member_at_59_has_index_zero() {
    let f = MonicCubic::new(0, 2, 1);
    assert_eq!(degeneracy_index(&f, 59, &params()).unwrap(), 0);
    assert!(classify_extension(&f, 59, &params()).generic());
}

#[test]
fn wrong_splitting_is_an_error() {
    let e = degeneracy_index(&MonicCubic::new(0, 7, -12), 7, &params()).unwrap_err();
    assert!(matches!(e, ClassifyError::WrongSplittingType { .. }));
}

#[test]
fn doubling_precision_does_not_change_the_verdict() {
    for (f, p) in [(MonicCubic::new(0, 7, -12), 5u64), (MonicCubic::new(0, 1, 1), 31), (MonicCubic::new(0, 2, 1), 59)] {
        let a = classify_extension(&f, p, &params());
        let mut hi = params();
        hi.precision = Some(2 * hi.working_precision());
        let b = classify_extension(&f, p, &hi);
        assert_eq!(a.neat, b.neat, "{f}");
        assert_eq!(a.degeneracy_index, b.degeneracy_index, "{f}");
        let ua: BigInt = a.degeneracy.unwrap().unit_image.residue.parse().unwrap();
        let ub = b.degeneracy.unwrap();
        let ub: BigInt = ub.unit_image.residue.parse().unwrap();
        let m = BigInt::from(p).pow(a.precision);
        assert_eq!(ua, ub % m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn translation_invariance(c in -6i64..=6) {
        let f = MonicCubic::new(0, 7, -12);
        let g = f.translate(c);
        let a = classify_extension(&f, 5, &params());
        let b = classify_extension(&g, 5, &params());
        prop_assert_eq!(&a.field_disc, &b.field_disc);
        prop_assert_eq!(a.neat, b.neat);
        prop_assert_eq!(a.degeneracy_index, b.degeneracy_index);
        prop_assert_eq!(a.generic(), b.generic());
    }
}
