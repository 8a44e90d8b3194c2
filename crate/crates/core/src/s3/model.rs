//! Finite model of `0 -> E -> E_1 + E_2 + E_3 -> P -> 0` over Z/p^j.
//!
//! E = ε is the (p-completed, mod p^j) unit module of L. Each E_k is the
//! unit module at one of the three places above p; its stabilizer acts on
//! the two generators a_k (fixed) and b_k (negated), so E_1 + E_2 + E_3 is
//! induced from that character pair. By Frobenius reciprocity a map
//! E -> E_1 + E_2 + E_3 is fixed by where the two eigenvectors of σ in E go
//! in E_1; we send them to α a_1 and β b_1 with α = p^i (the distinguished
//! unit is a p^i-th power at the place) and β = 1. P is the cokernel.

use serde::Serialize;

use super::{elements, standard_module, IsotypicType, Perm, S3Error, S3Module, Vector, ZMod, IDENTITY, TAU};

/// Generators of the free pro-p Galois group of the maximal p-extension
/// unramified outside p, for the global field and for one completion.
pub const GLOBAL_GENERATORS: usize = 4;
pub const LOCAL_GENERATORS: usize = 3;

#[derive(Clone, Debug)]
pub struct DegenerateModel {
    pub ring: ZMod,
    pub i: u32,
    /// E with basis (v+, v-).
    pub e: S3Module,
    /// E_1 + E_2 + E_3 with basis (a_1, b_1, a_2, b_2, a_3, b_3).
    pub sum: S3Module,
    pub p_module: S3Module,
    /// E -> E_1 + E_2 + E_3 as a 6x2 matrix.
    pub phi: Vec<Vector>,
    /// E_1 + E_2 + E_3 -> P as a 4x6 matrix.
    pub pi: Vec<Vector>,
    /// A splitting P -> E_1 + E_2 + E_3 of `pi` (6x4).
    pub section: Vec<Vector>,
}

/// Coset representatives g_k with g_k(0) = k.
fn coset_rep(k: usize) -> Perm {
    TAU.pow(k as u32)
}

fn induced_matrix(z: &ZMod, g: Perm) -> Vec<Vector> {
    let mut m = vec![vec![0; 6]; 6];
    for k in 0..3 {
        let k2 = g.0[k];
        let h = coset_rep(k2).inverse().compose(g).compose(coset_rep(k));
        debug_assert_eq!(h.0[0], 0);
        let sign = if h == IDENTITY { 1 } else { z.reduce(-1) };
        m[2 * k2][2 * k] = 1;
        m[2 * k2 + 1][2 * k + 1] = sign;
    }
    m
}

fn matrix_inverse(z: &ZMod, a: &[Vector]) -> Vec<Vector> {
    let n = a.len();
    let s = z.smith(&a.to_vec(), n);
    assert!(s.rank == n && s.valuations.iter().all(|&v| v == 0), "matrix is not invertible");
    // L A R = I  =>  A^{-1} = R L
    z.mat_mul(&s.right, &s.left)
}

pub fn build_degenerate_model(p: u64, j: u32, i: u32) -> Result<DegenerateModel, S3Error> {
    if p <= 3 || !crate::arith::is_prime_u128(p as u128) {
        return Err(S3Error::BadPrime { p });
    }
    let z = ZMod::new(p, j);
    let e = standard_module(z)?;
    let sum = S3Module::new(z, induced_matrix(&z, super::SIGMA), induced_matrix(&z, TAU))?;

    let alpha = z.pow_p(i);
    let psi = vec![vec![alpha, 0], vec![0, 1]];
    let mut phi = vec![vec![0; 2]; 6];
    for k in 0..3 {
        let block = z.mat_mul(&psi, &e.act(coset_rep(k).inverse()));
        for r in 0..2 {
            phi[2 * k + r] = block[r].clone();
        }
    }

    // cokernel coordinates from the Smith form of phi^T
    let phi_t = z.transpose(&phi, 2);
    let s = z.smith(&phi_t, 6);
    assert!(
        s.rank == 2 && s.valuations.iter().all(|&v| v == 0),
        "image of E must be a free direct summand"
    );
    let r_inv = matrix_inverse(&z, &s.right);
    let pi: Vec<Vector> = (0..4).map(|c| (0..6).map(|r| s.right[r][c + 2]).collect()).collect();
    let section: Vec<Vector> = (0..6).map(|r| (0..4).map(|c| r_inv[c + 2][r]).collect()).collect();
    let induced = |g: &Vec<Vector>| z.mat_mul(&z.mat_mul(&pi, g), &section);
    let p_module = S3Module::new(z, induced(&sum.sigma), induced(&sum.tau))?;
    Ok(DegenerateModel { ring: z, i, e, sum, p_module, phi, pi, section })
}

impl DegenerateModel {
    pub fn j(&self) -> u32 {
        self.ring.j
    }

    /// min(i, j): the exponent of every intersection.
    pub fn expected_exponent(&self) -> u32 {
        self.i.min(self.ring.j)
    }

    /// Valuation of the image of the σ-fixed unit in E_1.
    pub fn unit_image_valuation(&self) -> u32 {
        self.ring.valuation(self.phi[0][0])
    }

    /// Generators of the image of E_k in P.
    pub fn image_of(&self, k: usize) -> Vec<Vector> {
        vec![self.pi.iter().map(|r| r[2 * k]).collect(), self.pi.iter().map(|r| r[2 * k + 1]).collect()]
    }

    pub fn equivariance_holds(&self) -> bool {
        let z = &self.ring;
        elements().into_iter().all(|(_, _, g)| {
            let phi_ok = z.mat_mul(&self.sum.act(g), &self.phi) == z.mat_mul(&self.phi, &self.e.act(g));
            let pi_ok = z.mat_mul(&self.p_module.act(g), &self.pi) == z.mat_mul(&self.pi, &self.sum.act(g));
            phi_ok && pi_ok
        })
    }

    /// ker(pi) = im(phi), pi surjective, phi injective.
    pub fn exactness_holds(&self) -> bool {
        let z = &self.ring;
        let phi_cols: Vec<Vector> = (0..2).map(|c| self.phi.iter().map(|r| r[c]).collect()).collect();
        let pi_t = z.transpose(&self.pi, 6);
        let kernel = z.left_kernel(&pi_t, 4);
        let composite_zero = z.mat_mul(&self.pi, &self.phi).iter().flatten().all(|&x| x == 0);
        let surjective = z.mat_mul(&self.pi, &self.section) == z.identity(4);
        let injective = z.log_size(&phi_cols, 6) == 2 * z.j;
        composite_zero && surjective && injective && z.same_submodule(&kernel, &phi_cols, 6)
    }
}

/// Structure of im(E_k) ∩ im(E_l) in P, as exponents of cyclic factors.
pub fn image_intersection(model: &DegenerateModel, k: usize, l: usize) -> Result<Vec<u32>, S3Error> {
    if k == l || k > 2 || l > 2 {
        return Err(S3Error::BadIndex { k, l });
    }
    let z = &model.ring;
    Ok(z.structure(&z.intersect(&model.image_of(k), &model.image_of(l), 4), 4))
}

pub fn triple_intersection(model: &DegenerateModel) -> Vec<u32> {
    let z = &model.ring;
    let two = z.intersect(&model.image_of(0), &model.image_of(1), 4);
    z.structure(&z.intersect(&two, &model.image_of(2), 4), 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaVerdict {
    /// S3-span of the image of the fixed generator a_1.
    pub r_type: IsotypicType,
    /// S3-span of the image of the negated generator b_1.
    pub s_type: IsotypicType,
    pub spans_p: bool,
    pub direct: bool,
}

impl InertiaVerdict {
    pub fn holds(&self) -> bool {
        self.r_type == IsotypicType::new(1, 0, 1) && self.s_type == IsotypicType::new(0, 1, 0) && self.spans_p && self.direct
    }
}

pub fn inertia_span_check(model: &DegenerateModel) -> Result<InertiaVerdict, S3Error> {
    let j = model.j();
    if model.i < j {
        return Err(S3Error::HypothesisNotMet { i: model.i, j });
    }
    let pm = &model.p_module;
    let z = &model.ring;
    let gens = model.image_of(0);
    let r = pm.span(&gens[..1]);
    let s = pm.span(&gens[1..]);
    let r_type = pm.isotypic_type_of(&r)?;
    let s_type = pm.isotypic_type_of(&s)?;
    let both: Vec<Vector> = r.iter().chain(&s).cloned().collect();
    Ok(InertiaVerdict {
        r_type,
        s_type,
        spans_p: z.log_size(&both, 4) == 4 * j,
        direct: z.log_size(&z.intersect(&r, &s, 4), 4) == 0,
    })
}

/// Every check on one model, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct ModelCheck {
    pub p: u64,
    pub j: u32,
    pub i: u32,
    pub p_type: IsotypicType,
    pub local_type: IsotypicType,
    pub equivariant: bool,
    pub exact: bool,
    /// Exponent l with every intersection expected to be Z/p^l.
    pub expected_exponent: u32,
    /// Cyclic-factor exponents of the pairwise intersections (12, 13, 23).
    pub pairwise: Vec<Vec<u32>>,
    pub triple: Vec<u32>,
    /// None when i < j (hypothesis not met, check skipped).
    pub inertia: Option<InertiaVerdict>,
    pub passed: bool,
}

pub fn check_model(p: u64, j: u32, i: u32) -> Result<ModelCheck, S3Error> {
    let m = build_degenerate_model(p, j, i)?;
    let p_type = super::isotypic_decompose(&m.p_module)?;
    let local_type = super::isotypic_decompose(&local_module(m.ring)?)?;
    let pairwise = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(k, l)| image_intersection(&m, k, l))
        .collect::<Result<Vec<_>, _>>()?;
    let triple = triple_intersection(&m);
    let l = m.expected_exponent();
    let cyclic = |e: &Vec<u32>| if l == 0 { e.is_empty() } else { e == &vec![l] };
    let inertia = match inertia_span_check(&m) {
        Ok(v) => Some(v),
        Err(S3Error::HypothesisNotMet { .. }) => None,
        Err(e) => return Err(e),
    };
    let equivariant = m.equivariance_holds();
    let exact = m.exactness_holds();
    let passed = equivariant
        && exact
        && p_type == IsotypicType::new(1, 1, 1)
        && local_type == IsotypicType::new(2, 1, 0)
        && pairwise.iter().all(cyclic)
        && cyclic(&triple)
        && inertia.as_ref().is_none_or(|v| v.holds());
    Ok(ModelCheck { p, j, i, p_type, local_type, equivariant, exact, expected_exponent: l, pairwise, triple, inertia, passed })
}

/// The local module: τ trivial, σ = diag(1, 1, -1), type 1 + 1 + χ.
pub fn local_module(z: ZMod) -> Result<S3Module, S3Error> {
    let m1 = z.reduce(-1);
    S3Module::new(z, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, m1]], z.identity(3))
}

#[cfg(test)]
mod tests {
    use super::super::isotypic_decompose;
    use super::*;

    #[test]
    fn model_shape() {
        let m = build_degenerate_model(5, 2, 1).unwrap();
        assert!(m.equivariance_holds());
        assert!(m.exactness_holds());
        assert_eq!(m.p_module.rank, GLOBAL_GENERATORS);
        assert_eq!(isotypic_decompose(&m.p_module).unwrap(), IsotypicType::new(1, 1, 1));
        assert_eq!(isotypic_decompose(&m.sum).unwrap(), IsotypicType::new(1, 1, 2));
        assert_eq!(m.unit_image_valuation(), 1);
    }

    #[test]
    fn intersections() {
        let m = build_degenerate_model(5, 1, 0).unwrap();
        assert_eq!(image_intersection(&m, 0, 1).unwrap(), Vec::<u32>::new());
        let m = build_degenerate_model(5, 2, 1).unwrap();
        assert_eq!(image_intersection(&m, 0, 1).unwrap(), vec![1]);
        let m = build_degenerate_model(7, 3, 5).unwrap();
        assert_eq!(image_intersection(&m, 1, 2).unwrap(), vec![3]);
        assert_eq!(triple_intersection(&m), vec![3]);
        assert!(image_intersection(&m, 1, 1).is_err());
    }

    #[test]
    fn inertia() {
        let v = inertia_span_check(&build_degenerate_model(5, 1, 1).unwrap()).unwrap();
        assert_eq!(v.r_type, IsotypicType::new(1, 0, 1));
        assert_eq!(v.s_type, IsotypicType::new(0, 1, 0));
        assert!(v.holds());
        assert!(inertia_span_check(&build_degenerate_model(5, 2, 3).unwrap()).unwrap().holds());
        assert_eq!(
            inertia_span_check(&build_degenerate_model(5, 2, 1).unwrap()),
            Err(S3Error::HypothesisNotMet { i: 1, j: 2 })
        );
    }

    #[test]
    fn local() {
        let m = local_module(ZMod::new(7, 2)).unwrap();
        assert_eq!(m.rank, LOCAL_GENERATORS);
        assert_eq!(isotypic_decompose(&m).unwrap(), IsotypicType::new(2, 1, 0));
    }
}
