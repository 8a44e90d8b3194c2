//! Fundamental units of complex cubic fields.
//!
//! Units with real embedding of size about X are short vectors for the
//! quadratic form `(a_r / X)^2 + 2 X |a_c|^2` (value 3 at |a_r| = X), and
//! that form has covolume independent of X. Scanning X = 2^k upwards finds
//! the unit of least |a_r| > 1 with a tiny enumeration per step.
//!
//! Fundamentality is then certified independently: a unit > 1 of a complex
//! cubic field is a Pisot number, so log eps_0 >= log(1.3247...) (Siegel),
//! and Artin's inequality `|d| < 4 eps_0^3 + 24` sharpens this. If the
//! candidate were `eps_0^k` then some prime `l <= log(eps) / log(eps_0)`
//! divides k; for each such l a prime q ≡ 1 mod l with a degree-one prime
//! where the candidate is not an l-th power rules it out.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::lattice::{lll, lll_from, short_vectors, ReducedBasis};
use super::{Coords, CubicFieldData, NfError};
use crate::arith::{is_prime_u128, pow_mod};
use crate::poly::roots_mod_p;

pub const DEFAULT_HEIGHT_BOUND: u64 = 1_000_000;

/// Smallest Pisot number, the real root of x^3 - x - 1.
const PLASTIC_NUMBER: f64 = 1.324_717_957_244_746;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitSearchParams {
    /// Coordinates (on the integral basis) of every unit up to this size are
    /// covered by the scan.
    pub height_bound: u64,
    /// Largest auxiliary prime tried when certifying non-powers.
    pub max_witness_prime: u64,
}

impl Default for UnitSearchParams {
    fn default() -> Self {
        UnitSearchParams { height_bound: DEFAULT_HEIGHT_BOUND, max_witness_prime: 1_000_000 }
    }
}

/// Local proof that a unit is not an l-th power: its image modulo the
/// degree-one prime `(q, x - root)` is not an l-th power residue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerWitness {
    pub exponent: u64,
    /// +1 for the unit itself, -1 for its negative (only needed for l = 2).
    pub sign: i8,
    pub q: u64,
    pub root: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitElement {
    #[serde(skip)]
    pub coords: Coords,
    /// Coefficients on 1, x, x^2 as reduced fraction strings.
    pub power_basis: [String; 3],
    pub display: String,
    /// Shortest of `+-eps^{+-1}` (as "expr" or "(expr)^-1", sign included).
    pub compact_display: String,
    pub norm: i32,
    /// log |eps| at the real place; positive after normalization.
    pub log_abs_real: f64,
    /// Largest exponent k for which `eps = +-eps_0^k` was still possible.
    pub exponent_bound: u64,
    pub witnesses: Vec<PowerWitness>,
    /// True when every prime exponent up to `exponent_bound` was excluded.
    pub certified: bool,
}

impl UnitElement {
    pub fn power_basis_rational(&self, k: &CubicFieldData) -> [BigRational; 3] {
        k.to_power_basis(&self.coords)
    }
}

/// `+-eps^{+-1}` with |real value| > 1 and positive leading power-basis
/// coefficient.
pub fn normalize_unit(k: &CubicFieldData, u: &Coords) -> Coords {
    let mut u = u.clone();
    if k.real_embedding(&u).abs() < 1.0 {
        u = k.unit_inverse(&u).expect("not a unit");
    }
    let pb = k.to_power_basis(&u);
    let lead = pb.iter().rev().find(|c| !c.is_zero()).expect("zero is not a unit");
    if lead.is_negative() {
        u = k.neg(&u);
    }
    u
}

fn scaled_basis(emb: &[[f64; 3]; 3], x: f64) -> [[f64; 3]; 3] {
    let s = x.sqrt();
    std::array::from_fn(|k| [emb[k][0] / x, emb[k][1] * s, emb[k][2] * s])
}

fn apply_transform(t: &[[i64; 3]; 3], v: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|c| (0..3).map(|j| t[i][j] as f64 * v[j][c]).sum())
    })
}

fn is_unit(k: &CubicFieldData, c: &[i64; 3]) -> bool {
    match k.norm_small(c) {
        Some(n) => n == 1 || n == -1,
        None => k.norm(&c.map(BigInt::from)).abs().is_one(),
    }
}

/// Lower bound for log eps_0 over all complex cubic fields of discriminant `d`.
pub fn regulator_lower_bound(field_disc: &BigInt) -> f64 {
    let pisot = PLASTIC_NUMBER.ln();
    let d = field_disc.abs().to_f64().unwrap_or(f64::INFINITY);
    if d > 28.0 {
        // |d| < 4 e^3 + 24, minus a little for rounding
        pisot.max(((d - 24.0) / 4.0).ln() / 3.0 - 1e-9)
    } else {
        pisot
    }
}

pub fn find_fundamental_unit(k: &CubicFieldData, params: &UnitSearchParams) -> Result<UnitElement, NfError> {
    if k.signature != (1, 1) {
        return Err(NfError::WrongSignature { real: k.signature.0, complex: k.signature.1 });
    }
    let emb = k.basis_embeddings();
    let max_basis = emb.iter().map(|v| v[0].abs()).fold(1.0f64, f64::max);
    let x_max = (6.0 * params.height_bound as f64 * max_basis).max(4.0);
    let mut reduced: Option<ReducedBasis> = None;
    let mut best: Option<(f64, [i64; 3])> = None;
    let mut first_hit: Option<u32> = None;
    let mut step = 0u32;
    loop {
        let x = 2f64.powi(step as i32);
        if x > x_max && first_hit.is_none() {
            return Err(NfError::SearchExhausted { bound: params.height_bound });
        }
        let scaled = scaled_basis(&emb, x);
        let basis = match &reduced {
            None => lll(scaled),
            Some(prev) => {
                lll_from(ReducedBasis { vectors: apply_transform(&prev.transform, &scaled), transform: prev.transform })
            }
        };
        for c in short_vectors(&basis, 3.5, 100_000) {
            if !is_unit(k, &c) {
                continue;
            }
            let coords = c.map(BigInt::from);
            let r = k.real_embedding(&coords).abs();
            if r <= 1.0 + 1e-9 {
                continue;
            }
            let l = r.ln();
            if best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, c));
            }
            first_hit.get_or_insert(step);
        }
        reduced = Some(basis);
        if let Some(h) = first_hit {
            if step > h {
                break;
            }
        }
        step += 1;
    }
    let (_, c) = best.unwrap();
    let u = normalize_unit(k, &c.map(BigInt::from));
    Ok(certify(k, u, params))
}

fn certify(k: &CubicFieldData, u: Coords, params: &UnitSearchParams) -> UnitElement {
    let log_eps = k.real_embedding(&u).abs().ln();
    let lower = regulator_lower_bound(&k.field_disc);
    let exponent_bound = (log_eps / lower + 1e-9).floor().max(1.0) as u64;
    let mut witnesses = Vec::new();
    let mut certified = true;
    for l in (2..=exponent_bound).filter(|&l| is_prime_u128(l as u128)) {
        let signs: &[i8] = if l == 2 { &[1, -1] } else { &[1] };
        for &sign in signs {
            let target = if sign == 1 { u.clone() } else { k.neg(&u) };
            match find_power_witness(k, &target, l, params.max_witness_prime) {
                Some((q, root)) => witnesses.push(PowerWitness { exponent: l, sign, q, root }),
                None => certified = false,
            }
        }
    }
    let pb = k.to_power_basis(&u);
    let norm = k.norm(&u).to_i32().unwrap();
    let inv = k.unit_inverse(&u).expect("unit");
    let compact_display = [
        k.format_element(&u),
        format!("-({})", k.format_element(&u)),
        format!("({})^-1", k.format_element(&inv)),
        format!("-({})^-1", k.format_element(&k.neg(&inv))),
    ]
    .into_iter()
    .min_by_key(|s| s.len())
    .unwrap();
    UnitElement {
        display: k.format_element(&u),
        compact_display,
        power_basis: pb.map(|c| c.to_string()),
        coords: u,
        norm,
        log_abs_real: log_eps,
        exponent_bound,
        witnesses,
        certified,
    }
}

/// A prime q ≡ 1 mod l, coprime to the index and discriminant, with a root
/// r of f mod q such that `a(r)` is not an l-th power residue.
fn find_power_witness(k: &CubicFieldData, a: &Coords, l: u64, max_q: u64) -> Option<(u64, u64)> {
    let mut q = l + 1;
    while q <= max_q {
        if is_prime_u128(q as u128) && !(&k.poly_disc % q).is_zero() {
            for r in roots_mod_p(&k.f.coeffs(), q) {
                let v = k.eval_at_zq_root(a, q, &r, 1);
                let v = v.residue().to_u64().unwrap();
                if v != 0 && pow_mod(v as u128, ((q - 1) / l) as u128, q as u128) != 1 {
                    return Some((q, r.to_u64().unwrap()));
                }
            }
        }
        q += l;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::maximal_order_basis;
    use super::*;
    use crate::poly::MonicCubic;

    fn unit_for(f: MonicCubic) -> (CubicFieldData, UnitElement) {
        let k = maximal_order_basis(&f).unwrap();
        let u = find_fundamental_unit(&k, &UnitSearchParams::default()).unwrap();
        (k, u)
    }

    #[test]
    fn flagship_unit_is_14x_minus_19_up_to_sign_and_inverse() {
        let (k, u) = unit_for(MonicCubic::new(0, 7, -12));
        let eps = k.from_integer_poly([-19, 14, 0]);
        assert_eq!(normalize_unit(&k, &eps), u.coords);
        assert!(u.certified);
        assert_eq!(u.norm.abs(), 1);
    }

    #[test]
    fn family_unit_is_x() {
        let (k, u) = unit_for(MonicCubic::new(0, 1, 1));
        let x = k.from_integer_poly([0, 1, 0]);
        assert_eq!(normalize_unit(&k, &x), u.coords);
        assert_eq!(u.display, "x^2 + 1");
    }

    #[test]
    fn cube_root_of_two() {
        let (_, u) = unit_for(MonicCubic::new(0, 0, -2));
        assert_eq!(u.display, "x^2 + x + 1");
        assert!(u.certified);
    }

    #[test]
    fn normalization_is_idempotent() {
        let (k, u) = unit_for(MonicCubic::new(0, 7, -12));
        assert_eq!(normalize_unit(&k, &u.coords), u.coords);
        let inv = k.unit_inverse(&u.coords).unwrap();
        assert_eq!(normalize_unit(&k, &k.neg(&inv)), u.coords);
    }

    #[test]
    fn real_field_rejected() {
        let k = maximal_order_basis(&MonicCubic::new(0, -7, 7)).unwrap();
        assert!(matches!(
            find_fundamental_unit(&k, &UnitSearchParams::default()),
            Err(NfError::WrongSignature { .. })
        ));
    }
}
