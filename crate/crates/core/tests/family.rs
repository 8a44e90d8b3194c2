use std::fs;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use s3ext::classification::{classify_extension, ClassifyParams};
use s3ext::family::{
    evaluate_member, family_prime, fast_genericity_witness, high_index_candidate_search, is_prime_wide, read_ledger,
    scan_family_range, scan_records, FamilyError, ScanOptions, Status,
};
use s3ext::poly::MonicCubic;

fn trial_division(n: u128) -> bool {
    n >= 2 && (2..).take_while(|d: &u128| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Independent witness: brute-force the simple root mod p, lift with
/// BigInt Newton steps and exponentiate with `modpow`.
fn oracle_generic(a: i64) -> bool {
    let p = family_prime(a);
    let pb = BigInt::from(p);
    let m = &pb * &pb;
    let f = |x: &BigInt| x * x * x + BigInt::from(a) * x + 1;
    let df = |x: &BigInt| BigInt::from(3) * x * x + BigInt::from(a);
    let r = (0..p)
        .map(BigInt::from)
        .find(|x| (f(x) % &pb == BigInt::from(0)) && (df(x) % &pb != BigInt::from(0)))
        .expect("simple root");
    let inv = df(&r).modpow(&(&pb - 2), &pb);
    let r2: BigInt = ((&r - f(&r) * inv) % &m + &m) % &m;
    r2.modpow(&(&pb - 1), &m) != BigInt::one()
}

#[test]
fn primality_matches_trial_division() {
    for a in -1..=300i64 {
        let p = family_prime(a) as u128;
        assert_eq!(is_prime_wide(p).unwrap(), trial_division(p), "a = {a}");
    }
    for n in 2..5000u128 {
        assert_eq!(is_prime_wide(n).unwrap(), trial_division(n), "n = {n}");
    }
}

#[test]
fn witness_matches_bigint_oracle() {
    for a in -1..=60i64 {
        if !trial_division(family_prime(a) as u128) {
            continue;
        }
        let w = fast_genericity_witness(a).unwrap();
        assert_eq!(w.generic, oracle_generic(a), "a = {a}");
    }
}

#[test]
fn witness_uses_logarithmically_many_multiplications() {
    for a in [1i64, 4, 11, 1000, 100_000, 1_000_000] {
        let Ok(w) = fast_genericity_witness(a) else { continue };
        let bits = 128 - w.p.leading_zeros();
        assert!(w.mulmods <= 2 * bits + 4, "a = {a}: {} mulmods for {bits}-bit p", w.mulmods);
    }
}

#[test]
fn witness_agrees_with_classifier() {
    let params = ClassifyParams::default();
    for a in -1..=60i64 {
        let p = family_prime(a);
        if !trial_division(p as u128) {
            continue;
        }
        let w = fast_genericity_witness(a).unwrap();
        let report = classify_extension(&MonicCubic::new(0, a, 1), p as u64, &params);
        assert!(report.failure.is_none(), "a = {a}: {:?}", report.failure);
        assert_eq!(w.generic, report.generic(), "a = {a}, p = {p}");
    }
}

#[test]
fn desk_scale_scan() {
    let recs = scan_records(-1, 12, 2).unwrap();
    let primes: Vec<(i64, i128)> =
        recs.iter().filter(|r| r.status != Status::Composite).map(|r| (r.a, r.p)).collect();
    assert_eq!(
        primes,
        vec![(-1, 23), (1, 31), (2, 59), (4, 283), (7, 1399), (10, 4027), (11, 5351)]
    );
    assert!(recs.iter().filter(|r| r.witness.is_some()).all(|r| r.status == Status::PrimeGeneric));
    assert!(scan_records(1, 0, 1).unwrap().is_empty());
    assert!(evaluate_member(-2).unwrap().is_none());
}

#[test]
fn parallel_ledger_equals_serial() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("serial"), dir.path().join("par"));
    let opts = ScanOptions { chunk_size: 37, ..Default::default() };
    scan_family_range(-3, 2000, &a, &opts).unwrap();
    scan_family_range(-3, 2000, &b, &ScanOptions { workers: 4, ..opts }).unwrap();
    let (la, lb) = (read_ledger(&a).unwrap(), read_ledger(&b).unwrap());
    assert_eq!(la, lb);
    assert_eq!(la.records.len(), 2002);
    assert_eq!(la.records.first().unwrap().a, -1);
}

#[test]
fn interrupted_scan_resumes_identically() {
    let dir = tempfile::tempdir().unwrap();
    let (full, part) = (dir.path().join("full"), dir.path().join("part"));
    let opts = ScanOptions { chunk_size: 16, workers: 3, ..Default::default() };
    scan_family_range(-1, 500, &full, &opts).unwrap();

    let s = scan_family_range(-1, 500, &part, &ScanOptions { max_new_records: Some(123), ..opts.clone() }).unwrap();
    assert!(!s.complete);
    // simulate a crash in the middle of writing the next line
    let mut f = fs::OpenOptions::new().append(true).open(&part).unwrap();
    f.write_all(b"123,7414899,prime-gen").unwrap();
    drop(f);
    let l = read_ledger(&part).unwrap();
    assert!(l.truncated_tail);
    assert_eq!(l.records.len(), 123);

    assert!(matches!(scan_family_range(-1, 500, &part, &opts), Err(FamilyError::LedgerExists(_))));
    let s = scan_family_range(-1, 500, &part, &ScanOptions { resume: true, ..opts.clone() }).unwrap();
    assert!(s.complete && s.dropped_truncated_line);
    assert_eq!(s.resumed_after, Some(121));
    assert_eq!(read_ledger(&part).unwrap(), read_ledger(&full).unwrap());

    let other = ScanOptions { resume: true, ..opts };
    assert!(matches!(scan_family_range(0, 500, &part, &other), Err(FamilyError::RangeMismatch { .. })));
}

#[test]
fn corruption_in_the_middle_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ledger");
    scan_family_range(-1, 20, &path, &ScanOptions::default()).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    assert!(lines[6].starts_with("3,135,composite"));
    lines[6] = lines[6].replace("composite", "prime-generic");
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    match read_ledger(&path) {
        Err(FamilyError::LedgerCorrupt { line, .. }) => assert_eq!(line, 7),
        other => panic!("{other:?}"),
    }
}

#[test]
fn high_index_candidates() {
    let c = high_index_candidate_search(5, 2, 30, 30).unwrap();
    assert!(c.iter().any(|c| (c.r, c.s) == (-29, 4)));
    for x in &c {
        assert_eq!((x.r + x.s) % 25, 0);
        assert!(x.v_p_f1 >= 2);
        let f = x.polynomial();
        assert_eq!(f.eval(&BigInt::one()).to_i64().unwrap() % 25, 0);
        assert!(f.discriminant() < BigInt::from(0));
    }
    assert!(high_index_candidate_search(5, 1, 1, 1).unwrap().is_empty());
    let flagged = c.iter().find(|c| (c.r, c.s) == (-29, 4)).unwrap();
    println!("(-29, 4): v_5(f(1)) = {}, v_5(rho - 1) = {}", flagged.v_p_f1, flagged.v_p_root_minus_one);
}
