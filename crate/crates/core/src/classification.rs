//! Neatness, degeneracy index and genericity of the S3-extension attached to
//! a complex cubic at a prime p > 3.
//!
//! The three neatness conditions are evaluated on data of the cubic field K
//! and its quadratic resolvent k:
//!
//! 1. units: the fundamental unit of K must not be a p-th power in the
//!    ramified completion above p (places not above p impose nothing once
//!    condition 3 holds);
//! 2. class number: p must divide neither h(k) nor h(K);
//! 3. roots of unity: no completion of L at a ramified prime contains the
//!    p-th roots of unity.
//!
//! The degeneracy index is the p-power index of the fundamental unit in the
//! unramified completion `K -> Q_p`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{big_pow, fundamental_discriminant, inv_mod_big, is_prime_u128, kronecker, valuation};
use crate::number_field::{
    cubic_class_number_prime_to_p, find_fundamental_unit, imaginary_quadratic_class_number, maximal_order_basis,
    prime_splitting_type, ClassGroupCheck, Coords, CubicFieldData, NfError, SplittingType, UnitElement,
    UnitSearchParams, DEFAULT_MINKOWSKI_CEILING,
};
use crate::padic::{
    contains_pth_roots_of_unity, pth_power_index_qp, quad_embed_cubic_root, quad_unit_power_index,
    splitting_quadratic_field, LocalQuadElement, PadicError, PadicInt,
};
use crate::poly::{multiplicity_mod_p, roots_mod_p, zq_roots, MonicCubic};

pub const DEFAULT_MAX_INDEX: u32 = 4;

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyParams {
    /// Largest degeneracy index probed.
    pub max_index: u32,
    /// p-adic working precision; defaults to `max_index + 2`.
    pub precision: Option<u32>,
    pub unit_search: UnitSearchParams,
    pub minkowski_ceiling: f64,
    /// Use the q-adic factorization when q divides [O_K : Z[x]].
    pub allow_index_fallback: bool,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams {
            max_index: DEFAULT_MAX_INDEX,
            precision: None,
            unit_search: UnitSearchParams::default(),
            minkowski_ceiling: DEFAULT_MINKOWSKI_CEILING,
            allow_index_fallback: true,
        }
    }
}

impl ClassifyParams {
    pub fn working_precision(&self) -> u32 {
        self.precision.unwrap_or(self.max_index + 2).max(self.max_index + 1)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("p = {p} must be a prime greater than 3")]
    SmallPrime { p: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("the cubic is reducible (rational root {root})")]
    Reducible { root: i64 },
    #[error("discriminant {disc} > 0: the splitting field is not totally complex")]
    NotTotallyComplex { disc: BigInt },
    #[error("p splits as {found} in K; expected [(2,1),(1,1)]")]
    WrongSplittingType { found: String },
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

impl ClassifyError {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassifyError::SmallPrime { .. } => "SmallPrime",
            ClassifyError::NotPrime { .. } => "NotPrime",
            ClassifyError::Reducible { .. } => "Reducible",
            ClassifyError::NotTotallyComplex { .. } => "NotTotallyComplex",
            ClassifyError::WrongSplittingType { .. } => "WrongSplittingType",
            ClassifyError::Field(NfError::BoundTooLarge { .. }) => "BoundTooLarge",
            ClassifyError::Field(NfError::SearchExhausted { .. }) => "SearchExhausted",
            ClassifyError::Field(_) => "NumberField",
            ClassifyError::Padic(PadicError::PrecisionTooLow { .. }) => "PrecisionTooLow",
            ClassifyError::Padic(_) => "Padic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub evidence: String,
}

/// Data of L at one ramified rational prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamifiedPrimeEvidence {
    pub q: u64,
    pub splitting_in_k: String,
    pub e_in_l: u32,
    pub f_in_l: u32,
    pub residue_field_size: String,
    pub contains_pth_roots_of_unity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadicValue {
    pub residue: String,
    pub p: u64,
    pub precision: u32,
}

impl From<&PadicInt> for PadicValue {
    fn from(x: &PadicInt) -> Self {
        PadicValue { residue: x.residue().to_string(), p: x.prime(), precision: x.precision() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadValue {
    pub field: String,
    pub a: String,
    pub b: String,
    pub p_precision: u32,
}

impl From<&LocalQuadElement> for QuadValue {
    fn from(x: &LocalQuadElement) -> Self {
        QuadValue {
            field: x.field().to_string(),
            a: x.a().to_string(),
            b: x.b().to_string(),
            p_precision: x.precision(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassNumbers {
    pub quadratic_discriminant: String,
    pub h_quadratic: u64,
    pub cubic: ClassGroupCheck,
}

/// Everything the neatness check established.
#[derive(Clone, Debug, Serialize)]
pub struct NeatnessEvidence {
    pub p_splitting: String,
    pub ramified: Vec<RamifiedPrimeEvidence>,
    pub fundamental_unit: UnitElement,
    pub ramified_root: QuadValue,
    pub unit_at_ramified_place: QuadValue,
    pub unit_index_at_ramified_place: u32,
    pub class_numbers: ClassNumbers,
    pub condition1: ConditionVerdict,
    pub condition2: ConditionVerdict,
    pub condition3: ConditionVerdict,
    #[serde(skip)]
    field: Option<CubicFieldData>,
}

impl NeatnessEvidence {
    pub fn neat(&self) -> bool {
        self.condition1.holds && self.condition2.holds && self.condition3.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyEvidence {
    pub unramified_root: PadicValue,
    pub unit_image: PadicValue,
    pub index: u32,
    /// The probe limit was reached, so the true index is at least `index`.
    pub capped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub polynomial: String,
    pub coefficients: [i64; 3],
    pub p: u64,
    pub precision: u32,
    pub max_index: u32,
    pub poly_disc: Option<String>,
    pub field_disc: Option<String>,
    pub index: Option<String>,
    pub ramified_primes: Vec<u64>,
    pub neatness: Option<NeatnessEvidence>,
    pub degeneracy: Option<DegeneracyEvidence>,
    pub neat: Option<bool>,
    pub degeneracy_index: Option<u32>,
    generic: bool,
    pub warnings: Vec<String>,
    pub lemmas: Vec<String>,
    pub failure: Option<Failure>,
}

impl ClassificationReport {
    /// Neat with degeneracy index 0.
    pub fn generic(&self) -> bool {
        self.generic
    }

    pub fn verdict(&self) -> String {
        match (&self.failure, self.neat, self.degeneracy_index) {
            (Some(f), _, _) => format!("failed: {}", f.kind),
            (None, Some(false), _) => "not neat".into(),
            (None, Some(true), Some(0)) => "generic".into(),
            (None, Some(true), Some(i)) => {
                let capped = self.degeneracy.as_ref().is_some_and(|d| d.capped);
                format!("degenerate, index {}{i}", if capped { ">= " } else { "" })
            }
            _ => "incomplete".into(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "polynomial: {}", self.polynomial);
        let _ = writeln!(s, "p: {}", self.p);
        let _ = writeln!(s, "verdict: {}", self.verdict());
        if let Some(d) = &self.poly_disc {
            let _ = writeln!(s, "polynomial discriminant: {d}");
        }
        if let (Some(d), Some(i)) = (&self.field_disc, &self.index) {
            let _ = writeln!(s, "field discriminant: {d} (index {i})");
        }
        if !self.ramified_primes.is_empty() {
            let _ = writeln!(s, "ramified primes: {:?}", self.ramified_primes);
        }
        if let Some(n) = &self.neatness {
            let _ = writeln!(s, "splitting of p in K: {}", n.p_splitting);
            for r in &n.ramified {
                let _ = writeln!(
                    s,
                    "  q = {}: K-type {}, in L e = {}, f = {}, residue field size {}, p-th roots of unity: {}",
                    r.q, r.splitting_in_k, r.e_in_l, r.f_in_l, r.residue_field_size, r.contains_pth_roots_of_unity
                );
            }
            let u = &n.fundamental_unit;
            let _ = writeln!(
                s,
                "fundamental unit: {} = {} (norm {}, log|eps| = {:.6}, certified fundamental: {})",
                u.display, u.compact_display, u.norm, u.log_abs_real, u.certified
            );
            let _ = writeln!(
                s,
                "ramified place {}: root {} + {}*sqrt(d), unit {} + {}*sqrt(d), power index {}",
                n.ramified_root.field,
                n.ramified_root.a,
                n.ramified_root.b,
                n.unit_at_ramified_place.a,
                n.unit_at_ramified_place.b,
                n.unit_index_at_ramified_place
            );
            let c = &n.class_numbers;
            let _ = writeln!(
                s,
                "class numbers: h({}) = {}; cubic: Minkowski bound {:.2}, relations rank {} of {}, h divides {}",
                c.quadratic_discriminant,
                c.h_quadratic,
                c.cubic.minkowski_bound,
                c.cubic.rank_mod_p,
                c.cubic.factor_base.len(),
                c.cubic.class_number_divides.as_deref().unwrap_or("?")
            );
            for (name, v) in [("condition 1", &n.condition1), ("condition 2", &n.condition2), ("condition 3", &n.condition3)] {
                let _ = writeln!(s, "{name}: {} ({})", v.holds, v.evidence);
            }
        }
        if let Some(d) = &self.degeneracy {
            let _ = writeln!(
                s,
                "unramified place: root {} mod {}^{}, unit image {} mod {}^{}, power index {}{}",
                d.unramified_root.residue,
                d.unramified_root.p,
                d.unramified_root.precision,
                d.unit_image.residue,
                d.unit_image.p,
                d.unit_image.precision,
                d.index,
                if d.capped { " (probe limit)" } else { "" }
            );
        }
        if let Some(n) = self.neat {
            let _ = writeln!(s, "neat: {n}");
        }
        if let Some(i) = self.degeneracy_index {
            let _ = writeln!(s, "degeneracy index: {i}");
        }
        let _ = writeln!(s, "generic: {}", self.generic);
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        for l in &self.lemmas {
            let _ = writeln!(s, "lemma: {l}");
        }
        if let Some(f) = &self.failure {
            let _ = writeln!(s, "failure: {} — {}", f.kind, f.message);
        }
        s
    }
}

const SUBFIELD_UNITS_WARNING: &str = "units of the cubic subfields are assumed to generate the unit group of L up to \
     index prime to p; the degeneracy criterion uses the fundamental unit of K";
const CLASS_NUMBER_WARNING: &str = "p does not divide h(L) is derived from p not dividing h(k) and h(K) (isotypic \
     decomposition of Cl(L)[p^inf] for p coprime to 6), not computed on L directly";
const UNIT_REDUCTION_LEMMA: &str = "at a place v not above p whose residue field has no p-th roots of unity, \
     every local unit is a p-th power (the unit group is mu x (1-units), mu of order prime to p, and 1-units are \
     a pro-q group with q != p); so condition 1 only involves the places above p";

const SPLITTING_IN_L_LEMMA: &str = "p = P1^2 P2 in K forces e = 2 in the Galois closure, so p = (Q1 Q2 Q3)^2 in L; \
     an unramified factorization p = Q1 Q2 Q3 in L is incompatible with this and is not used";

fn check_prime(p: u64) -> Result<(), ClassifyError> {
    if p <= 3 {
        return Err(ClassifyError::SmallPrime { p });
    }
    if !is_prime_u128(p as u128) {
        return Err(ClassifyError::NotPrime { p });
    }
    Ok(())
}

/// Field data after the structural preconditions (irreducible, complex,
/// p of type [(2,1),(1,1)]).
fn prepare(f: &MonicCubic, p: u64, params: &ClassifyParams) -> Result<(CubicFieldData, SplittingType), ClassifyError> {
    check_prime(p)?;
    if let Some(root) = f.rational_root() {
        return Err(ClassifyError::Reducible { root });
    }
    let disc = f.discriminant();
    if disc > BigInt::zero() {
        return Err(ClassifyError::NotTotallyComplex { disc });
    }
    let k = maximal_order_basis(f)?;
    let t = prime_splitting_type(&k, p, params.allow_index_fallback)?;
    if t != SplittingType(vec![(2, 1), (1, 1)]) {
        return Err(ClassifyError::WrongSplittingType { found: t.to_string() });
    }
    Ok((k, t))
}

fn ramified_evidence(
    k: &CubicFieldData,
    p: u64,
    params: &ClassifyParams,
) -> Result<Vec<RamifiedPrimeEvidence>, ClassifyError> {
    let d_k = fundamental_discriminant(&k.field_disc);
    let d_small = d_k.to_i128().expect("discriminant too large");
    let mut out = Vec::new();
    for q in k.ramified_primes() {
        let t = prime_splitting_type(k, q, params.allow_index_fallback)?;
        let (e, f) = if t.0.iter().any(|&(e, _)| e == 2) {
            (2, 1)
        } else if (&d_k % q).is_zero() {
            (6, 1)
        } else if kronecker(d_small, q as u128) == -1 {
            (3, 2)
        } else {
            (3, 1)
        };
        let size = big_pow(q, f);
        let contains = contains_pth_roots_of_unity(&size, e, p);
        out.push(RamifiedPrimeEvidence {
            q,
            splitting_in_k: t.to_string(),
            e_in_l: e,
            f_in_l: f,
            residue_field_size: size.to_string(),
            contains_pth_roots_of_unity: contains,
        });
    }
    Ok(out)
}

/// Image of `a` in Q_p(sqrt d) under x -> rho.
fn eval_at_quad_root(k: &CubicFieldData, a: &Coords, rho: &LocalQuadElement, precision: u32) -> Result<LocalQuadElement, PadicError> {
    let (num, den) = k.power_numerators(a);
    let field = rho.field();
    let c = |x: &BigInt| LocalQuadElement::new(field, x.clone(), 0, rho.precision());
    let val = &(&c(&num[0]) + &(&c(&num[1]) * rho)) + &(&(&c(&num[2]) * rho) * rho);
    let p = field.prime();
    let v = valuation(&den, p);
    let val = val.div_by_p_power(v)?;
    let unit = &den / big_pow(p, v);
    let m = big_pow(p, val.precision());
    let inv = inv_mod_big(&unit, &m).ok_or(PadicError::NotUnit)?;
    let out = &val * &LocalQuadElement::new(field, inv, 0, val.precision());
    if out.precision() < precision {
        return Err(PadicError::PrecisionTooLow { needed: precision, available: out.precision() });
    }
    Ok(out.with_precision(precision))
}

pub fn neatness_check(f: &MonicCubic, p: u64, params: &ClassifyParams) -> Result<NeatnessEvidence, ClassifyError> {
    let (k, t) = prepare(f, p, params)?;
    let n = params.working_precision();

    // condition 3
    let ramified = ramified_evidence(&k, p, params)?;
    let bad: Vec<u64> = ramified.iter().filter(|r| r.contains_pth_roots_of_unity).map(|r| r.q).collect();
    let condition3 = ConditionVerdict {
        holds: bad.is_empty(),
        evidence: if bad.is_empty() {
            format!(
                "residue fields of L at {:?} have sizes {:?}, none = 1 mod {p}; at {p} itself e = 2 < {}",
                ramified.iter().map(|r| r.q).collect::<Vec<_>>(),
                ramified.iter().map(|r| r.residue_field_size.clone()).collect::<Vec<_>>(),
                p - 1
            )
        } else {
            format!("completions at {bad:?} contain the {p}-th roots of unity")
        },
    };

    // condition 2
    let d_k = fundamental_discriminant(&k.field_disc);
    let h_k = imaginary_quadratic_class_number(&d_k)?;
    let cubic = cubic_class_number_prime_to_p(&k, p, params.minkowski_ceiling)?;
    let condition2 = ConditionVerdict {
        holds: h_k % p != 0 && cubic.coprime_to_p,
        evidence: format!(
            "h({d_k}) = {h_k}; class group relations of K have full rank mod {p}: {}",
            cubic.coprime_to_p
        ),
    };

    // condition 1
    let unit = find_fundamental_unit(&k, &params.unit_search)?;
    let den_v = valuation(k.basis_denominator(), p);
    let field = splitting_quadratic_field(f, p, n + den_v + 2)?;
    let rho = quad_embed_cubic_root(f, &field, n + den_v + 2)?;
    let z = eval_at_quad_root(&k, &unit.coords, &rho, n)?;
    let idx_ram = quad_unit_power_index(&z, params.max_index)?;
    let condition1 = ConditionVerdict {
        holds: idx_ram == 0,
        evidence: format!(
            "fundamental unit maps to {} + {}*sqrt({}) in {}; p-power index there is {idx_ram}",
            z.a(),
            z.b(),
            field.d(),
            field
        ),
    };

    Ok(NeatnessEvidence {
        p_splitting: t.to_string(),
        ramified,
        fundamental_unit: unit,
        ramified_root: QuadValue::from(&rho.with_precision(n)),
        unit_at_ramified_place: QuadValue::from(&z),
        unit_index_at_ramified_place: idx_ram,
        class_numbers: ClassNumbers { quadratic_discriminant: d_k.to_string(), h_quadratic: h_k, cubic },
        condition1,
        condition2,
        condition3,
        field: Some(k),
    })
}

fn degeneracy_from(
    k: &CubicFieldData,
    unit: &UnitElement,
    p: u64,
    params: &ClassifyParams,
) -> Result<DegeneracyEvidence, ClassifyError> {
    let n = params.working_precision();
    let den_v = valuation(k.basis_denominator(), p);
    let coeffs = k.f.coeffs();
    let simple: Vec<BigInt> = roots_mod_p(&coeffs, p)
        .into_iter()
        .filter(|r| multiplicity_mod_p(&coeffs, r, p) == 1)
        .collect();
    assert_eq!(simple.len(), 1, "type [(2,1),(1,1)] has exactly one simple root mod p");
    let work = n + den_v + valuation(&k.poly_disc, p);
    let root = zq_roots(&coeffs, p, work)
        .into_iter()
        .find(|r| (r - &simple[0]).mod_floor(&BigInt::from(p)).is_zero())
        .expect("simple root lifts to Z_p");
    let image = k.eval_at_zq_root(&unit.coords, p, &root, work).with_precision(n);
    let index = pth_power_index_qp(&image, params.max_index)?;
    Ok(DegeneracyEvidence {
        unramified_root: PadicValue::from(&PadicInt::new(p, n, root)),
        unit_image: PadicValue::from(&image),
        index,
        capped: index == params.max_index,
    })
}

/// Degeneracy index at p; requires the neatness conditions to hold.
pub fn degeneracy_index(f: &MonicCubic, p: u64, params: &ClassifyParams) -> Result<u32, ClassifyError> {
    let ev = neatness_check(f, p, params)?;
    let k = ev.field.as_ref().unwrap();
    Ok(degeneracy_from(k, &ev.fundamental_unit, p, params)?.index)
}

/// Full report; errors land in the `failure` section.
pub fn classify_extension(f: &MonicCubic, p: u64, params: &ClassifyParams) -> ClassificationReport {
    let mut report = ClassificationReport {
        polynomial: f.to_string(),
        coefficients: [f.c2, f.c1, f.c0],
        p,
        precision: params.working_precision(),
        max_index: params.max_index,
        poly_disc: Some(f.discriminant().to_string()),
        field_disc: None,
        index: None,
        ramified_primes: Vec::new(),
        neatness: None,
        degeneracy: None,
        neat: None,
        degeneracy_index: None,
        generic: false,
        warnings: Vec::new(),
        lemmas: Vec::new(),
        failure: None,
    };
    if let Ok(k) = maximal_order_basis(f) {
        report.field_disc = Some(k.field_disc.to_string());
        report.index = Some(k.index.to_string());
        report.ramified_primes = k.ramified_primes();
        if (&k.index % p).is_zero() && params.allow_index_fallback {
            report.warnings.push(format!("{p} divides the index; its splitting was read from the {p}-adic factorization"));
        }
    }
    let result = neatness_check(f, p, params).and_then(|ev| {
        let deg = if ev.neat() {
            Some(degeneracy_from(ev.field.as_ref().unwrap(), &ev.fundamental_unit, p, params)?)
        } else {
            None
        };
        Ok((ev, deg))
    });
    match result {
        Ok((ev, deg)) => {
            report.neat = Some(ev.neat());
            report.warnings.push(SUBFIELD_UNITS_WARNING.into());
            report.warnings.push(CLASS_NUMBER_WARNING.into());
            if !ev.fundamental_unit.certified {
                report.warnings.push(
                    "fundamentality of the unit is heuristic: some prime exponent could not be excluded".into(),
                );
            }
            report.lemmas.push(SPLITTING_IN_L_LEMMA.into());
            report.lemmas.push(UNIT_REDUCTION_LEMMA.into());
            if let Some(d) = &deg {
                report.degeneracy_index = Some(d.index);
                if d.capped {
                    report.warnings.push(format!(
                        "the unit is a p^{}-th power at the probe limit; the true index may be larger",
                        d.index
                    ));
                }
                debug_assert_eq!(ev.unit_index_at_ramified_place, 0);
            }
            report.neatness = Some(ev);
            report.degeneracy = deg;
        }
        Err(e) => {
            report.failure = Some(Failure { kind: e.kind().into(), message: e.to_string() });
        }
    }
    report.generic = report.failure.is_none() && report.neat == Some(true) && report.degeneracy_index == Some(0);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flagship_is_degenerate_of_index_one() {
        let r = classify_extension(&MonicCubic::new(0, 7, -12), 5, &ClassifyParams::default());
        assert!(r.failure.is_none(), "{:?}", r.failure);
        assert_eq!(r.neat, Some(true));
        assert_eq!(r.degeneracy_index, Some(1));
        assert!(!r.generic());
        assert_eq!(r.ramified_primes, vec![5, 263]);
        let d = r.degeneracy.as_ref().unwrap();
        let root: BigInt = d.unramified_root.residue.parse().unwrap();
        assert_eq!(root % 125, BigInt::from(62));
        let u: BigInt = d.unit_image.residue.parse().unwrap();
        assert_eq!(u % 25, BigInt::from(24));
    }

    #[test]
    fn family_member_is_generic() {
        let r = classify_extension(&MonicCubic::new(0, 1, 1), 31, &ClassifyParams::default());
        assert!(r.failure.is_none(), "{:?}", r.failure);
        assert!(r.generic());
        assert_eq!(r.verdict(), "generic");
    }

    #[test]
    fn structural_failures() {
        let p = ClassifyParams::default();
        let r = classify_extension(&MonicCubic::new(0, -1, 1), 5, &p);
        assert_eq!(r.failure.as_ref().unwrap().kind, "WrongSplittingType");
        assert!(!r.generic());
        let r = classify_extension(&MonicCubic::new(0, 7, -12), 7, &p);
        assert_eq!(r.failure.as_ref().unwrap().kind, "WrongSplittingType");
        let r = classify_extension(&MonicCubic::new(0, 0, -1), 5, &p);
        assert_eq!(r.failure.as_ref().unwrap().kind, "Reducible");
        let r = classify_extension(&MonicCubic::new(0, 7, -12), 3, &p);
        assert_eq!(r.failure.as_ref().unwrap().kind, "SmallPrime");
        let r = classify_extension(&MonicCubic::new(0, -7, 7), 7, &p);
        assert_eq!(r.failure.as_ref().unwrap().kind, "NotTotallyComplex");
    }
}
