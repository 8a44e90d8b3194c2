//! The family x^3 + a x + 1 with p = 27 + 4a^3 prime, and the high-index
//! family x^3 + r x^2 + s x - 1.
//!
//! For p = -disc prime, f has a double root -3/(2a) and a simple root 3/a
//! mod p. The simple root lifts to the unramified embedding K -> Q_p, and x
//! is a unit (x(x^2 + a) = -1), so the degeneracy index of x is zero iff
//! r^(p-1) != 1 mod p^2 for the lifted root r.
//!
//! Scans write a line-oriented ledger:
//!
//! ```text
//! # s3ext family ledger v1 range=-1:12
//! a,p,status,witness,timestamp,checksum
//! -1,23,prime-generic,277,1792316445,<16 hex digits>
//! ```
//!
//! The checksum is the first 16 hex digits of SHA-256 over the preceding
//! five fields joined by commas. A damaged final line is treated as an
//! interrupted write and rescanned; damage anywhere else is an error.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::{inv_mod, is_prime_u128, mul_mod, valuation};
use crate::number_field::{maximal_order_basis, prime_splitting_type, SplittingType};
use crate::poly::{multiplicity_mod_p, roots_mod_p, zq_roots, MonicCubic};

pub const LEDGER_SCHEMA_VERSION: u32 = 1;
const LEDGER_MAGIC: &str = "# s3ext family ledger v";
const LEDGER_COLUMNS: &str = "a,p,status,witness,timestamp,checksum";
pub const DEFAULT_CHUNK_SIZE: usize = 512;

/// Primes p with p^2 at or above this do not fit the u128 witness path.
const WITNESS_LIMIT: u128 = 1 << 63;

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("{n} is outside the supported range [2, 2^64)")]
    OutOfRange { n: u128 },
    #[error("27 + 4a^3 = {p} is not prime (a = {a})")]
    NotPrime { a: i64, p: i128 },
    #[error("no simple root of x^3 + {a}x + 1 mod {p}")]
    NoSimpleRoot { a: i64, p: u128 },
    #[error("ledger line {line}: {reason}")]
    LedgerCorrupt { line: usize, reason: String },
    #[error("ledger covers range {found}, requested {requested}")]
    RangeMismatch { found: String, requested: String },
    #[error("ledger already exists at {0}; pass resume to continue it")]
    LedgerExists(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Deterministic primality for 2 <= n < 2^64: trial division by small
/// primes, then Miller–Rabin with the first 13 prime bases.
pub fn is_prime_wide(n: u128) -> Result<bool, FamilyError> {
    if n < 2 || n > u64::MAX as u128 {
        return Err(FamilyError::OutOfRange { n });
    }
    Ok(is_prime_u128(n))
}

pub fn family_prime(a: i64) -> i128 {
    27 + 4 * (a as i128).pow(3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    PrimeGeneric,
    PrimeNongenericWitness,
    Composite,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::PrimeGeneric => "prime-generic",
            Status::PrimeNongenericWitness => "prime-nongeneric-witness",
            Status::Composite => "composite",
            Status::Skipped => "skipped",
        }
    }

    fn parse(s: &str) -> Option<Status> {
        Some(match s {
            "prime-generic" => Status::PrimeGeneric,
            "prime-nongeneric-witness" => Status::PrimeNongenericWitness,
            "composite" => Status::Composite,
            "skipped" => Status::Skipped,
            _ => return None,
        })
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: i64,
    pub p: u128,
    /// Simple root of f mod p^2.
    pub root: u128,
    /// root^(p-1) mod p^2.
    pub value: u128,
    pub generic: bool,
    /// Multiplications mod p^2 performed.
    pub mulmods: u32,
}

/// Power index test for the unit x at the unramified place above p.
pub fn fast_genericity_witness(a: i64) -> Result<Witness, FamilyError> {
    let pi = family_prime(a);
    if pi < 2 || !is_prime_wide(pi as u128)? {
        return Err(FamilyError::NotPrime { a, p: pi });
    }
    let p = pi as u128;
    if p <= 3 || p >= WITNESS_LIMIT {
        return Err(FamilyError::OutOfRange { n: p });
    }
    let m = p * p;
    let mut ops = 0u32;
    let mut mm = |x: u128, y: u128| {
        ops += 1;
        mul_mod(x, y, m)
    };
    let ap = (a as i128).rem_euclid(pi) as u128;
    let am = (a as i128).rem_euclid(m as i128) as u128;
    // a != 0 mod p since p = 27 + 4a^3 > 27 and p prime
    let r1 = mul_mod(3, inv_mod(ap, p).ok_or(FamilyError::NoSimpleRoot { a, p })?, p);
    // f(r) mod p^2 and f'(r) mod p
    let r2 = mm(r1, r1);
    let fr = (mm(r2, r1) + mm(am, r1) + 1) % m;
    let dfr = (3 * (r2 % p) + ap) % p;
    if !fr.is_multiple_of(p) || dfr == 0 {
        return Err(FamilyError::NoSimpleRoot { a, p });
    }
    // one Newton step: r = r1 - f(r1)/f'(r1), with f(r1)/p computed exactly
    let t = mul_mod(fr / p, inv_mod(dfr, p).unwrap(), p);
    let root = (r1 + m - t * p % m) % m;
    let mut value = 1u128;
    let mut base = root;
    let mut e = p - 1;
    while e > 0 {
        if e & 1 == 1 {
            value = mm(value, base);
        }
        e >>= 1;
        if e > 0 {
            base = mm(base, base);
        }
    }
    Ok(Witness { a, p, root, value, generic: value != 1, mulmods: ops })
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerRecord {
    pub a: i64,
    pub p: i128,
    pub status: Status,
    pub witness: Option<u128>,
    pub timestamp: u64,
}

impl PartialEq for LedgerRecord {
    /// Timestamps are excluded: two scans agree when they found the same.
    fn eq(&self, other: &Self) -> bool {
        (self.a, self.p, self.status, self.witness) == (other.a, other.p, other.status, other.witness)
    }
}

impl Eq for LedgerRecord {}

impl LedgerRecord {
    fn body(&self) -> String {
        let w = self.witness.map(|w| w.to_string()).unwrap_or_default();
        format!("{},{},{},{},{}", self.a, self.p, self.status, w, self.timestamp)
    }

    pub fn to_line(&self) -> String {
        let body = self.body();
        format!("{body},{}", checksum(&body))
    }

    pub fn parse_line(line: &str) -> Result<LedgerRecord, String> {
        let (body, sum) = line.rsplit_once(',').ok_or("missing checksum")?;
        if checksum(body) != sum {
            return Err("checksum mismatch".into());
        }
        let f: Vec<&str> = body.split(',').collect();
        if f.len() != 5 {
            return Err(format!("expected 6 fields, found {}", f.len() + 1));
        }
        let a: i64 = f[0].parse().map_err(|_| "bad a")?;
        let p: i128 = f[1].parse().map_err(|_| "bad p")?;
        if p != family_prime(a) {
            return Err(format!("p = {p} does not match 27 + 4a^3"));
        }
        let status = Status::parse(f[2]).ok_or("bad status")?;
        let witness = if f[3].is_empty() { None } else { Some(f[3].parse().map_err(|_| "bad witness")?) };
        let timestamp = f[4].parse().map_err(|_| "bad timestamp")?;
        Ok(LedgerRecord { a, p, status, witness, timestamp })
    }
}

fn checksum(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Ledger record for one a, or None when 27 + 4a^3 <= 0.
pub fn evaluate_member(a: i64) -> Result<Option<LedgerRecord>, FamilyError> {
    let p = family_prime(a);
    if p <= 0 {
        return Ok(None);
    }
    let rec = |status, witness| Some(LedgerRecord { a, p, status, witness, timestamp: now() });
    if p as u128 >= WITNESS_LIMIT {
        return Ok(rec(Status::Skipped, None));
    }
    if p < 2 || !is_prime_wide(p as u128)? {
        return Ok(rec(Status::Composite, None));
    }
    let w = fast_genericity_witness(a)?;
    let status = if w.generic { Status::PrimeGeneric } else { Status::PrimeNongenericWitness };
    Ok(rec(status, Some(w.value)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    pub schema_version: u32,
    pub range: (i64, i64),
    pub records: Vec<LedgerRecord>,
    /// A damaged final line was dropped.
    pub truncated_tail: bool,
    /// Byte length of the valid prefix.
    valid_len: u64,
}

fn range_string(r: (i64, i64)) -> String {
    format!("{}:{}", r.0, r.1)
}

fn header(range: (i64, i64)) -> String {
    format!("{LEDGER_MAGIC}{LEDGER_SCHEMA_VERSION} range={}\n{LEDGER_COLUMNS}\n", range_string(range))
}

pub fn parse_range(s: &str) -> Result<(i64, i64), FamilyError> {
    // the separator is the first ':' not at the start, so "-5:-1" works
    let bad = || FamilyError::InvalidArgument(format!("range {s:?}: expected A:B"));
    let idx = s.char_indices().skip(1).find(|&(_, c)| c == ':').map(|(i, _)| i).ok_or_else(bad)?;
    let lo = s[..idx].trim().parse().map_err(|_| bad())?;
    let hi = s[idx + 1..].trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

pub fn read_ledger(path: &Path) -> Result<Ledger, FamilyError> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    let corrupt = |line: usize, reason: &str| FamilyError::LedgerCorrupt { line, reason: reason.into() };
    let mut lines = text.split_inclusive('\n');
    let h = lines.next().ok_or_else(|| corrupt(1, "empty ledger"))?;
    let rest = h.trim_end().strip_prefix(LEDGER_MAGIC).ok_or_else(|| corrupt(1, "missing header"))?;
    let (ver, range) = rest.split_once(" range=").ok_or_else(|| corrupt(1, "missing range"))?;
    let schema_version: u32 = ver.parse().map_err(|_| corrupt(1, "bad schema version"))?;
    if schema_version != LEDGER_SCHEMA_VERSION {
        return Err(corrupt(1, &format!("unsupported schema version {schema_version}")));
    }
    let range = parse_range(range).map_err(|_| corrupt(1, "bad range"))?;
    let cols = lines.next().ok_or_else(|| corrupt(2, "missing column line"))?;
    if cols.trim_end() != LEDGER_COLUMNS || !cols.ends_with('\n') {
        return Err(corrupt(2, "bad column line"));
    }
    let mut valid_len = (h.len() + cols.len()) as u64;
    let mut records: Vec<LedgerRecord> = Vec::new();
    let mut truncated_tail = false;
    let all: Vec<&str> = lines.collect();
    for (i, raw) in all.iter().enumerate() {
        let line_no = i + 3;
        let last = i + 1 == all.len();
        let parsed = if raw.ends_with('\n') {
            LedgerRecord::parse_line(raw.trim_end_matches('\n'))
        } else {
            Err("incomplete line".to_string())
        };
        let parsed = parsed.and_then(|r| {
            let expected = records.last().map_or(range.0.max(-1), |prev| prev.a + 1);
            if r.a != expected {
                return Err(format!("expected a = {expected}, found {}", r.a));
            }
            Ok(r)
        });
        match parsed {
            Ok(r) => {
                valid_len += raw.len() as u64;
                records.push(r);
            }
            Err(_) if last => truncated_tail = true,
            Err(reason) => return Err(corrupt(line_no, &reason)),
        }
    }
    Ok(Ledger { schema_version, range, records, truncated_tail, valid_len })
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub workers: usize,
    pub chunk_size: usize,
    pub resume: bool,
    /// Stop after writing this many new records (simulates an interruption).
    pub max_new_records: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { workers: 1, chunk_size: DEFAULT_CHUNK_SIZE, resume: false, max_new_records: None }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub range: (i64, i64),
    pub records: usize,
    pub new_records: usize,
    pub resumed_after: Option<i64>,
    pub dropped_truncated_line: bool,
    /// (a, p) for every prime member.
    pub prime_members: Vec<(i64, String)>,
    pub generic: usize,
    pub composite: usize,
    pub skipped: usize,
    /// Counterexamples to the expectation that every prime member is generic.
    pub nongeneric: Vec<(i64, String)>,
    pub complete: bool,
}

impl ScanSummary {
    fn add(&mut self, r: &LedgerRecord) {
        self.records += 1;
        match r.status {
            Status::PrimeGeneric => {
                self.generic += 1;
                self.prime_members.push((r.a, r.p.to_string()));
            }
            Status::PrimeNongenericWitness => {
                self.prime_members.push((r.a, r.p.to_string()));
                self.nongeneric.push((r.a, r.p.to_string()));
            }
            Status::Composite => self.composite += 1,
            Status::Skipped => self.skipped += 1,
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "range {}: {} records ({} new), {} prime members, {} generic, {} composite, {} skipped\n",
            range_string(self.range),
            self.records,
            self.new_records,
            self.prime_members.len(),
            self.generic,
            self.composite,
            self.skipped
        );
        if let Some(a) = self.resumed_after {
            s.push_str(&format!("resumed after a = {a}\n"));
        }
        if self.dropped_truncated_line {
            s.push_str("dropped an incomplete final ledger line and rescanned it\n");
        }
        if self.prime_members.len() <= 50 {
            for (a, p) in &self.prime_members {
                s.push_str(&format!("  a = {a}: p = {p}\n"));
            }
        }
        for (a, p) in &self.nongeneric {
            s.push_str(&format!("!!! NONGENERIC WITNESS: a = {a}, p = {p}\n"));
        }
        if !self.complete {
            s.push_str("scan incomplete\n");
        }
        s
    }
}

/// Records for a range without touching disk.
pub fn scan_records(lo: i64, hi: i64, workers: usize) -> Result<Vec<LedgerRecord>, FamilyError> {
    let pool = pool(workers)?;
    let out: Result<Vec<Option<LedgerRecord>>, FamilyError> =
        pool.install(|| (lo..=hi).into_par_iter().map(evaluate_member).collect());
    Ok(out?.into_iter().flatten().collect())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, FamilyError> {
    if workers == 0 {
        return Err(FamilyError::InvalidArgument("workers must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| FamilyError::InvalidArgument(e.to_string()))
}

/// Scan `[a_lo, a_hi]` into the ledger at `path`.
///
/// Records with 27 + 4a^3 <= 0 are omitted, so the ledger starts at
/// max(a_lo, -1). Chunks are evaluated in parallel and written in order by
/// the calling thread.
pub fn scan_family_range(a_lo: i64, a_hi: i64, path: &Path, opts: &ScanOptions) -> Result<ScanSummary, FamilyError> {
    let pool = pool(opts.workers)?;
    if opts.chunk_size == 0 {
        return Err(FamilyError::InvalidArgument("chunk size must be positive".into()));
    }
    let range = (a_lo, a_hi);
    let first = a_lo.max(-1);
    let mut summary = ScanSummary { range, complete: true, ..Default::default() };

    let mut next = first;
    let file = if path.exists() {
        if !opts.resume {
            return Err(FamilyError::LedgerExists(path.display().to_string()));
        }
        let ledger = read_ledger(path)?;
        if ledger.range != range {
            return Err(FamilyError::RangeMismatch {
                found: range_string(ledger.range),
                requested: range_string(range),
            });
        }
        if let Some(last) = ledger.records.last() {
            next = last.a + 1;
            summary.resumed_after = Some(last.a);
        }
        if let Some(r) = ledger.records.first() {
            if r.a != first {
                return Err(FamilyError::LedgerCorrupt { line: 3, reason: format!("ledger starts at a = {}", r.a) });
            }
        }
        summary.dropped_truncated_line = ledger.truncated_tail;
        for r in &ledger.records {
            summary.add(r);
        }
        let mut f = OpenOptions::new().read(true).write(true).open(path)?;
        f.set_len(ledger.valid_len)?;
        f.seek(SeekFrom::End(0))?;
        f
    } else {
        let mut f = File::create(path)?;
        f.write_all(header(range).as_bytes())?;
        f
    };
    let mut w = BufWriter::new(file);

    let batch = opts.chunk_size * opts.workers;
    let mut budget = opts.max_new_records;
    while next <= a_hi {
        let end = a_hi.min(next.saturating_add(batch as i64 - 1));
        let chunks: Vec<(i64, i64)> = (next..=end)
            .step_by(opts.chunk_size)
            .map(|s| (s, end.min(s + opts.chunk_size as i64 - 1)))
            .collect();
        let results: Vec<Result<Vec<LedgerRecord>, FamilyError>> = pool.install(|| {
            chunks
                .par_iter()
                .map(|&(s, e)| {
                    let mut v = Vec::new();
                    for a in s..=e {
                        if let Some(r) = evaluate_member(a)? {
                            v.push(r);
                        }
                    }
                    Ok(v)
                })
                .collect()
        });
        for chunk in results {
            for r in chunk? {
                if budget == Some(0) {
                    summary.complete = false;
                    w.flush()?;
                    return Ok(summary);
                }
                writeln!(w, "{}", r.to_line())?;
                summary.add(&r);
                summary.new_records += 1;
                budget = budget.map(|b| b - 1);
            }
        }
        w.flush()?;
        next = end + 1;
    }
    w.flush()?;
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighIndexCandidate {
    pub r: i64,
    pub s: i64,
    pub poly_disc: String,
    /// v_p(r + s) = v_p(f(1)).
    pub v_p_f1: u32,
    /// v_p(x - 1) at the unramified place K -> Q_p, i.e. v_p(rho - 1) for
    /// the Q_p root rho.
    pub v_p_root_minus_one: u32,
}

impl HighIndexCandidate {
    pub fn polynomial(&self) -> MonicCubic {
        MonicCubic::new(self.r, self.s, -1)
    }
}

/// All (r, s) with |r| <= r_bound, |s| <= s_bound such that p^n | r + s and
/// x^3 + r x^2 + s x - 1 is irreducible, has one real root, and p splits
/// as [(2,1),(1,1)] in its field.
pub fn high_index_candidate_search(
    p: u64,
    n: u32,
    r_bound: i64,
    s_bound: i64,
) -> Result<Vec<HighIndexCandidate>, FamilyError> {
    if p <= 3 || !is_prime_u128(p as u128) || n == 0 || r_bound < 0 || s_bound < 0 {
        return Err(FamilyError::InvalidArgument(format!("p = {p}, n = {n}, bounds {r_bound}, {s_bound}")));
    }
    let pn = (p as i64).checked_pow(n).ok_or_else(|| FamilyError::InvalidArgument("p^n too large".into()))?;
    let target = SplittingType(vec![(2, 1), (1, 1)]);
    let mut out = Vec::new();
    for r in -r_bound..=r_bound {
        for s in -s_bound..=s_bound {
            // the only possible rational roots are +-1: f(1) = r + s, f(-1) = r - s - 2
            if (r + s) % pn != 0 || r + s == 0 || r - s - 2 == 0 {
                continue;
            }
            let f = MonicCubic::new(r, s, -1);
            let disc = f.discriminant();
            if disc >= BigInt::zero() {
                continue;
            }
            let Ok(k) = maximal_order_basis(&f) else { continue };
            if prime_splitting_type(&k, p, true).map_or(true, |t| t != target) {
                continue;
            }
            let coeffs = f.coeffs();
            let simple = roots_mod_p(&coeffs, p).into_iter().find(|x| multiplicity_mod_p(&coeffs, x, p) == 1);
            let Some(simple) = simple else { continue };
            let prec = 2 * n + valuation(&disc, p) + 4;
            let rho = zq_roots(&coeffs, p, prec)
                .into_iter()
                .find(|x| (x - &simple).mod_floor(&BigInt::from(p)).is_zero())
                .expect("simple root lifts");
            out.push(HighIndexCandidate {
                r,
                s,
                poly_disc: disc.to_string(),
                v_p_f1: valuation(&BigInt::from(r + s), p),
                v_p_root_minus_one: valuation(&(rho - 1), p).min(prec),
            });
        }
    }
    Ok(out)
}
