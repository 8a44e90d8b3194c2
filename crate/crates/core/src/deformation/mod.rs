//! The universal deformation of the residual S3 representation over
//! Z_p[[T1, T2, T3]], realized in the truncated ring Z/p^N[T]/(deg > D).
//!
//! The residual representation sends σ to diag(1, -1) and τ to
//! ((-1/2, 1/2), (-3/2, -1/2)). The deformation lifts σ and τ constantly and
//! sends the two inertia generators to
//!
//! ```text
//! u -> diag(1 + T1, 1 + T1)
//! v -> ((sqrt(1 - 3 T3^2), T3), (-3 T3, sqrt(1 - 3 T3^2)))
//! ```
//!
//! The u-image is scalar, so T2 never enters; [`Variant::TwoParameter`]
//! uses diag(1 + T1, 1 + T2) instead.

mod loci;
mod series;

pub use loci::{evaluate_loci, LocusMembership, LocusReport, LocusValue, SpecializationPoint};
pub use series::{Exponent, Mat2, SeriesRing, TruncSeries};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformError {
    #[error("series is not a unit (constant term divisible by p)")]
    NotUnit,
    #[error("square root needs constant term 1, found {found}")]
    BadConstantTerm { found: u64 },
    #[error("f and g must have zero constant term")]
    NonzeroConstantTerm,
    #[error("coordinate T{coordinate} has p-adic valuation {valuation}; points must lie in pZ_p")]
    BadPoint { coordinate: usize, valuation: i64 },
    #[error("substitution leaves no significant p-adic digits (effective precision {precision})")]
    PrecisionTooLow { precision: u32 },
    #[error("cannot parse series {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// u -> diag(1 + T1, 1 + T1).
    #[default]
    AsPrinted,
    /// u -> diag(1 + T1, 1 + T2).
    TwoParameter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualRep {
    pub p: u64,
    pub sigma: [[u64; 2]; 2],
    pub tau: [[u64; 2]; 2],
}

fn mat_mod(a: [[u64; 2]; 2], b: [[u64; 2]; 2], p: u64) -> [[u64; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|k| (a[i][0] * b[0][k] + a[i][1] * b[1][k]) % p))
}

impl ResidualRep {
    pub fn new(p: u64) -> Result<ResidualRep, DeformError> {
        let r = SeriesRing::new(p, 1, 0)?;
        let half = r.inv(2).unwrap();
        let h = |x: i64| (r.reduce_i64(x) * half) % p;
        Ok(ResidualRep { p, sigma: [[1, 0], [0, p - 1]], tau: [[h(-1), h(1)], [h(-3), h(-1)]] })
    }

    /// σ² = τ³ = 1 and στσ^{-1} = τ^{-1} mod p.
    pub fn relations_hold(&self) -> bool {
        let p = self.p;
        let id = [[1, 0], [0, 1]];
        let m = |a, b| mat_mod(a, b, p);
        let tau2 = m(self.tau, self.tau);
        m(self.sigma, self.sigma) == id && m(tau2, self.tau) == id && m(m(self.sigma, self.tau), self.sigma) == tau2
    }
}

pub fn residual_rep(p: u64) -> Result<ResidualRep, DeformError> {
    ResidualRep::new(p)
}

#[derive(Clone, Debug)]
pub struct UniversalImages {
    pub ring: SeriesRing,
    pub variant: Variant,
    pub sigma: Mat2,
    pub tau: Mat2,
    pub u: Mat2,
    pub v: Mat2,
}

pub fn universal_deformation(p: u64, n: u32, d: u32, variant: Variant) -> Result<UniversalImages, DeformError> {
    let ring = SeriesRing::new(p, n, d)?;
    let half = ring.inv(2).unwrap();
    let h = |x: i64| ring.reduce_i64(x) as u128 * half as u128 % ring.modulus() as u128;
    let h = |x: i64| h(x) as u64;
    let sigma = Mat2::constant(&ring, [[1, 0], [0, ring.reduce_i64(-1)]]);
    let tau = Mat2::constant(&ring, [[h(-1), h(1)], [h(-3), h(-1)]]);
    let (t1, t2, t3) = (ring.var(0), ring.var(1), ring.var(2));
    let one = ring.one();
    let second = match variant {
        Variant::AsPrinted => one.add(&t1),
        Variant::TwoParameter => one.add(&t2),
    };
    let u = Mat2::new(one.add(&t1), ring.zero(), ring.zero(), second);
    let v = eta_matrix(&t3, &t3.scale(ring.reduce_i64(-3)))?.matrix;
    Ok(UniversalImages { ring, variant, sigma, tau, u, v })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offending {
    pub entry: (usize, usize),
    pub exponent: Exponent,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    pub first_offending: Option<Offending>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub p: u64,
    pub precision: u32,
    pub degree: u32,
    pub variant: Variant,
    pub relations: Vec<RelationCheck>,
    /// Images mod (p, T) equal the residual representation.
    pub reduction_matches_residual: bool,
    pub notes: Vec<String>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.reduction_matches_residual && self.relations.iter().all(|r| r.holds)
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "universal deformation mod ({}^{}, deg > {}), variant {:?}\n",
            self.p, self.precision, self.degree, self.variant
        );
        for r in &self.relations {
            s.push_str(&format!("  {:<28} {}\n", r.relation, if r.holds { "holds" } else { "FAILS" }));
            if let Some(o) = &r.first_offending {
                s.push_str(&format!(
                    "    first difference: entry {:?}, monomial T^{:?}: {} vs {}\n",
                    o.entry, o.exponent, o.lhs, o.rhs
                ));
            }
        }
        s.push_str(&format!("  reduction equals residual representation: {}\n", self.reduction_matches_residual));
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

fn compare(name: &str, lhs: Result<Mat2, DeformError>, rhs: Result<Mat2, DeformError>) -> RelationCheck {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let first_offending = l.first_difference(&r).map(|(entry, exponent, a, b)| Offending {
                entry,
                exponent,
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
            RelationCheck { relation: name.into(), holds: first_offending.is_none(), first_offending }
        }
        _ => RelationCheck { relation: name.into(), holds: false, first_offending: None },
    }
}

/// Checks every defining relation exactly in the truncated ring.
pub fn verify_group_relations(im: &UniversalImages) -> RelationReport {
    let r = im.ring;
    let id = Mat2::identity(&r);
    let conj = |g: &Mat2, x: &Mat2| g.inverse().map(|gi| g.mul(x).mul(&gi));
    let relations = vec![
        compare("σ² = 1", Ok(im.sigma.pow(2)), Ok(id.clone())),
        compare("τ³ = 1", Ok(im.tau.pow(3)), Ok(id.clone())),
        compare("στσ⁻¹ = τ⁻¹", conj(&im.sigma, &im.tau), im.tau.inverse()),
        compare("σuσ⁻¹ = u", conj(&im.sigma, &im.u), Ok(im.u.clone())),
        compare("τvτ⁻¹ = v", conj(&im.tau, &im.v), Ok(im.v.clone())),
        compare("σvσ⁻¹ = v⁻¹", conj(&im.sigma, &im.v), im.v.inverse()),
        {
            let det = im.v.det();
            let first_offending = det.first_difference(&r.one()).map(|(e, a, b)| Offending {
                entry: (0, 0),
                exponent: e,
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
            RelationCheck { relation: "det v = 1".into(), holds: first_offending.is_none(), first_offending }
        },
    ];
    let res = ResidualRep::new(r.p).expect("ring prime is valid");
    let id_mod_p = [[1, 0], [0, 1]];
    let reduction_matches_residual = im.sigma.residual() == res.sigma
        && im.tau.residual() == res.tau
        && im.u.residual() == id_mod_p
        && im.v.residual() == id_mod_p;
    let mut notes = Vec::new();
    let scalar_u = im.u.entries[0][1].is_zero()
        && im.u.entries[1][0].is_zero()
        && im.u.entries[0][0] == im.u.entries[1][1];
    if scalar_u {
        notes.push(
            "the u-image is scalar, so it commutes with every image and T2 does not occur; \
             the two-parameter variant diag(1+T1, 1+T2) is available"
                .into(),
        );
    }
    RelationReport {
        p: r.p,
        precision: r.n,
        degree: r.d,
        variant: im.variant,
        relations,
        reduction_matches_residual,
        notes,
    }
}

#[derive(Clone, Debug)]
pub struct EtaMatrix {
    pub matrix: Mat2,
    /// f ≡ T3 and g ≡ -3 T3 modulo squares of the maximal ideal.
    pub linear_terms_match: bool,
}

/// ((sqrt(1 + fg), f), (g, sqrt(1 + fg))), of determinant 1.
pub fn eta_matrix(f: &TruncSeries, g: &TruncSeries) -> Result<EtaMatrix, DeformError> {
    if f.constant_term() != 0 || g.constant_term() != 0 {
        return Err(DeformError::NonzeroConstantTerm);
    }
    let r = f.ring();
    let s = r.one().add(&f.mul(g)).sqrt_one_unit()?;
    let t3 = r.var(2);
    let linear_terms_match =
        f.homogeneous_part(1) == t3 && g.homogeneous_part(1) == t3.scale(r.reduce_i64(-3));
    Ok(EtaMatrix { matrix: Mat2::new(s.clone(), f.clone(), g.clone(), s), linear_terms_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_representation() {
        let r = residual_rep(5).unwrap();
        assert!(r.relations_hold());
        // trace -1, det 1
        assert_eq!((r.tau[0][0] + r.tau[1][1]) % 5, 4);
        assert_eq!((r.tau[0][0] * r.tau[1][1] + 5 * 5 - r.tau[0][1] * r.tau[1][0]) % 5, 1);
    }

    #[test]
    fn relations_at_small_precision() {
        for variant in [Variant::AsPrinted, Variant::TwoParameter] {
            let im = universal_deformation(5, 6, 6, variant).unwrap();
            let rep = verify_group_relations(&im);
            assert!(rep.all_hold(), "{}", rep.render_text());
            assert_eq!(rep.notes.is_empty(), variant == Variant::TwoParameter);
        }
    }

    #[test]
    fn corrupted_v_is_caught() {
        let mut im = universal_deformation(5, 6, 6, Variant::AsPrinted).unwrap();
        let r = im.ring;
        im.v.entries[1][0] = r.var(2).scale(r.reduce_i64(-2));
        let rep = verify_group_relations(&im);
        assert!(!rep.all_hold());
        let failed: Vec<&RelationCheck> = rep.relations.iter().filter(|c| !c.holds).collect();
        assert!(failed.iter().any(|c| c.first_offending.is_some()));
    }

    #[test]
    fn eta_examples() {
        let r = SeriesRing::new(7, 5, 5).unwrap();
        let t3 = r.var(2);
        let g = t3.scale(r.reduce_i64(-3));
        let e = eta_matrix(&t3, &g).unwrap();
        assert!(e.linear_terms_match);
        let v = universal_deformation(7, 5, 5, Variant::AsPrinted).unwrap().v;
        assert_eq!(e.matrix, v);
        let id = eta_matrix(&r.zero(), &r.zero()).unwrap();
        assert_eq!(id.matrix, Mat2::identity(&r));
        assert!(!id.linear_terms_match);
        let f2 = t3.add(&r.var(0).mul(&t3));
        let e2 = eta_matrix(&f2, &g).unwrap();
        assert_eq!(e2.matrix.det(), r.one());
        assert!(e2.linear_terms_match);
        assert_eq!(eta_matrix(&r.one(), &g).unwrap_err(), DeformError::NonzeroConstantTerm);
    }
}
