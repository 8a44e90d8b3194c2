//! Evaluation of the distinguished loci at points of pZ_p^3.
//!
//! - inertially reducible: f = 0 or g = 0;
//! - ordinary: T1 = g = 0;
//! - inertially dihedral: T1 = T2, or f = g = 0.
//!
//! Values are only known modulo p^k, so a vanishing value means "zero to
//! precision k", never exact vanishing. When f, g are truncations at degree
//! D, the omitted terms have valuation > D at any point of pZ_p^3, which
//! caps k at D + 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{DeformError, SeriesRing, TruncSeries};
use crate::arith::valuation;
use crate::padic::PadicInt;

#[derive(Clone, Debug)]
pub struct SpecializationPoint {
    pub coords: [BigRational; 3],
}

impl SpecializationPoint {
    pub fn new(coords: [BigRational; 3], p: u64) -> Result<SpecializationPoint, DeformError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = valuation(c.numer(), p) as i64 - valuation(c.denom(), p) as i64;
            if v < 1 {
                return Err(DeformError::BadPoint { coordinate: i + 1, valuation: v });
            }
        }
        Ok(SpecializationPoint { coords })
    }

    pub fn from_integers(t: [i64; 3], p: u64) -> Result<SpecializationPoint, DeformError> {
        SpecializationPoint::new(t.map(|x| BigRational::from_integer(BigInt::from(x))), p)
    }

    fn padic(&self, ring: &SeriesRing) -> Result<[PadicInt; 3], DeformError> {
        let mut out = Vec::new();
        for c in &self.coords {
            out.push(PadicInt::new(ring.p, ring.n, ring.reduce_rational(c)?));
        }
        Ok(out.try_into().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusValue {
    pub name: String,
    /// Residue mod p^precision.
    pub residue: String,
    pub precision: u32,
    pub zero_to_precision: bool,
    /// Exact valuation when the value is nonzero to precision.
    pub valuation: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusMembership {
    /// Exactly on the locus (coordinates agree as rationals).
    Exact,
    /// Defining values vanish to working precision.
    ToPrecision,
    Off,
}

impl LocusMembership {
    pub fn on(self) -> bool {
        self != LocusMembership::Off
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub p: u64,
    pub point: [String; 3],
    pub f: String,
    pub g: String,
    pub precision: u32,
    pub values: Vec<LocusValue>,
    pub inertially_reducible: LocusMembership,
    pub ordinary: LocusMembership,
    pub dihedral: LocusMembership,
    pub notes: Vec<String>,
}

impl LocusReport {
    pub fn render_text(&self) -> String {
        let mut s = format!(
            "point ({}, {}, {}) at p = {}, f = {}, g = {}, precision p^{}\n",
            self.point[0], self.point[1], self.point[2], self.p, self.f, self.g, self.precision
        );
        for v in &self.values {
            match v.valuation {
                Some(k) => s.push_str(&format!("  {:<8} nonzero, valuation {k}\n", v.name)),
                None => s.push_str(&format!("  {:<8} zero to precision {}\n", v.name, v.precision)),
            }
        }
        s.push_str(&format!("inertially reducible (f = 0 or g = 0): {:?}\n", self.inertially_reducible));
        s.push_str(&format!("ordinary (T1 = g = 0): {:?}\n", self.ordinary));
        s.push_str(&format!("inertially dihedral (T1 = T2 or f = g = 0): {:?}\n", self.dihedral));
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

fn value(name: &str, x: &PadicInt, precision: u32) -> LocusValue {
    let x = x.with_precision(precision);
    let v = x.valuation();
    LocusValue {
        name: name.into(),
        residue: x.residue().to_string(),
        precision,
        zero_to_precision: v.is_none(),
        valuation: v,
    }
}

/// Evaluate f, g, T1 and T1 - T2 at a point and classify it.
pub fn evaluate_loci(point: &SpecializationPoint, f: &TruncSeries, g: &TruncSeries) -> Result<LocusReport, DeformError> {
    let ring = f.ring();
    assert_eq!(ring, g.ring(), "f and g from different rings");
    let precision = ring.n.min(ring.d + 1);
    if precision == 0 {
        return Err(DeformError::PrecisionTooLow { precision });
    }
    let t = point.padic(&ring)?;
    let fv = value("f", &f.evaluate(&t), precision);
    let gv = value("g", &g.evaluate(&t), precision);
    // coordinates are exact inputs, so only the p-adic precision applies
    let t1 = value("T1", &t[0], ring.n);
    let diff = PadicInt::new(ring.p, ring.n, t[0].residue() - t[1].residue());
    let d12 = value("T1 - T2", &diff, ring.n);

    let approx = |on: bool| if on { LocusMembership::ToPrecision } else { LocusMembership::Off };
    let inertially_reducible = approx(fv.zero_to_precision || gv.zero_to_precision);
    let ordinary = if point.coords[0].is_zero() && gv.zero_to_precision {
        LocusMembership::ToPrecision
    } else {
        approx(t1.zero_to_precision && gv.zero_to_precision)
    };
    let dihedral = if point.coords[0] == point.coords[1] {
        LocusMembership::Exact
    } else {
        approx(d12.zero_to_precision || (fv.zero_to_precision && gv.zero_to_precision))
    };
    let mut notes = vec![
        "zero to precision is not a proof of exact vanishing".to_string(),
        "f = g = 0 implying T1 = T2 is unproven and is not assumed".to_string(),
    ];
    if fv.zero_to_precision && gv.zero_to_precision && !d12.zero_to_precision {
        notes.push("f and g vanish to precision here while T1 != T2".into());
    }
    Ok(LocusReport {
        p: ring.p,
        point: point.coords.clone().map(|c| c.to_string()),
        f: f.to_string(),
        g: g.to_string(),
        precision,
        values: vec![fv, gv, t1, d12],
        inertially_reducible,
        ordinary,
        dihedral,
        notes,
    })
}
