//! S3-modules over Z/p^j (p > 3) and the finite models of the global and
//! local unit sequences.
//!
//! Conventions: S3 acts on {0, 1, 2}; σ = (1 2) and τ = (0 1 2). Module
//! elements are column vectors and g acts by its matrix. V is the
//! permutation representation, χ the sign and ε the standard
//! 2-dimensional piece, so V = 1 + ε.

mod model;
mod zmod;

pub use model::{
    build_degenerate_model, check_model, image_intersection, inertia_span_check, local_module, triple_intersection,
    DegenerateModel, InertiaVerdict, ModelCheck, GLOBAL_GENERATORS, LOCAL_GENERATORS,
};
pub use zmod::{Matrix, SmithForm, Vector, ZMod};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum S3Error {
    #[error("p = {p} must be a prime greater than 3")]
    BadPrime { p: u64 },
    #[error("action matrices violate {relation}")]
    BadAction { relation: &'static str },
    #[error("submodule is not free, so its isotypic type is undefined (sizes p^{sizes:?})")]
    NotFree { sizes: [u32; 3] },
    #[error("hypothesis i >= j not met (i = {i}, j = {j})")]
    HypothesisNotMet { i: u32, j: u32 },
    #[error("pair ({k}, {l}) must be distinct indices in 0..3")]
    BadIndex { k: usize, l: usize },
}

/// Permutation of {0, 1, 2}: `g.0[i]` is the image of i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub [usize; 3]);

pub const SIGMA: Perm = Perm([0, 2, 1]);
pub const TAU: Perm = Perm([1, 2, 0]);
pub const IDENTITY: Perm = Perm([0, 1, 2]);

impl Perm {
    /// `self ∘ other`.
    pub fn compose(self, other: Perm) -> Perm {
        Perm(std::array::from_fn(|i| self.0[other.0[i]]))
    }

    pub fn inverse(self) -> Perm {
        let mut out = [0; 3];
        for i in 0..3 {
            out[self.0[i]] = i;
        }
        Perm(out)
    }

    pub fn sign(self) -> i64 {
        let inversions = (0..3).flat_map(|a| (a + 1..3).map(move |b| (a, b))).filter(|&(a, b)| self.0[a] > self.0[b]);
        if inversions.count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn pow(self, k: u32) -> Perm {
        (0..k).fold(IDENTITY, |acc, _| acc.compose(self))
    }
}

/// The six elements as σ^s τ^t.
pub fn elements() -> Vec<(u32, u32, Perm)> {
    let mut out = Vec::with_capacity(6);
    for s in 0..2 {
        for t in 0..3 {
            out.push((s, t, SIGMA.pow(s).compose(TAU.pow(t))));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct S3Module {
    pub ring: ZMod,
    pub rank: usize,
    pub sigma: Matrix,
    pub tau: Matrix,
}

/// Multiplicities of 1, χ and ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicType {
    pub trivial: usize,
    pub sign: usize,
    pub standard: usize,
}

impl IsotypicType {
    pub const fn new(trivial: usize, sign: usize, standard: usize) -> Self {
        IsotypicType { trivial, sign, standard }
    }

    pub fn rank(&self) -> usize {
        self.trivial + self.sign + 2 * self.standard
    }
}

impl std::fmt::Display for IsotypicType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (n, name) in [(self.trivial, "1"), (self.sign, "χ"), (self.standard, "ε")] {
            parts.extend(std::iter::repeat_n(name.to_string(), n));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl S3Module {
    pub fn new(ring: ZMod, sigma: Matrix, tau: Matrix) -> Result<S3Module, S3Error> {
        if ring.p <= 3 {
            return Err(S3Error::BadPrime { p: ring.p });
        }
        let rank = sigma.len();
        let m = S3Module { ring, rank, sigma, tau };
        let z = &m.ring;
        let id = z.identity(rank);
        let sq = |a: &Matrix| z.mat_mul(a, a);
        if sq(&m.sigma) != id {
            return Err(S3Error::BadAction { relation: "σ² = 1" });
        }
        if z.mat_mul(&sq(&m.tau), &m.tau) != id {
            return Err(S3Error::BadAction { relation: "τ³ = 1" });
        }
        if z.mat_mul(&z.mat_mul(&m.sigma, &m.tau), &m.sigma) != sq(&m.tau) {
            return Err(S3Error::BadAction { relation: "στσ = τ²" });
        }
        Ok(m)
    }

    /// Matrix of a group element.
    pub fn act(&self, g: Perm) -> Matrix {
        let (s, t, _) = elements().into_iter().find(|e| e.2 == g).expect("every permutation is σ^s τ^t");
        let z = &self.ring;
        let mut m = z.identity(self.rank);
        for _ in 0..s {
            m = z.mat_mul(&m, &self.sigma);
        }
        for _ in 0..t {
            m = z.mat_mul(&m, &self.tau);
        }
        m
    }

    /// (e_1, e_χ, e_ε) as matrices on this module.
    pub fn idempotents(&self) -> [Matrix; 3] {
        let z = &self.ring;
        let six_inv = z.inv(6).expect("6 is a unit for p > 3");
        let zero = vec![vec![0; self.rank]; self.rank];
        let (mut sum, mut signed) = (zero.clone(), zero);
        for (_, _, g) in elements() {
            let m = self.act(g);
            sum = z.mat_add(&sum, &m);
            signed = z.mat_add(&signed, &z.mat_scale(z.reduce(g.sign()), &m));
        }
        let e1 = z.mat_scale(six_inv, &sum);
        let ec = z.mat_scale(six_inv, &signed);
        let id = z.identity(self.rank);
        let minus = |a: &Matrix, b: &Matrix| a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| z.sub(x, y)).collect()).collect();
        let ee = minus(&minus(&id, &e1), &ec);
        [e1, ec, ee]
    }

    /// S3-stable submodule generated by `gens`.
    pub fn span(&self, gens: &[Vector]) -> Vec<Vector> {
        let mut out = Vec::new();
        for (_, _, g) in elements() {
            let m = self.act(g);
            out.extend(gens.iter().map(|v| self.ring.mat_vec(&m, v)));
        }
        out
    }

    /// Isotypic type of an S3-stable submodule.
    pub fn isotypic_type_of(&self, gens: &[Vector]) -> Result<IsotypicType, S3Error> {
        let z = &self.ring;
        let sizes: [u32; 3] = self.idempotents().map(|e| {
            let img: Vec<Vector> = gens.iter().map(|v| z.mat_vec(&e, v)).collect();
            z.log_size(&img, self.rank)
        });
        let j = z.j;
        if !sizes[0].is_multiple_of(j) || !sizes[1].is_multiple_of(j) || !sizes[2].is_multiple_of(2 * j) {
            return Err(S3Error::NotFree { sizes });
        }
        Ok(IsotypicType::new((sizes[0] / j) as usize, (sizes[1] / j) as usize, (sizes[2] / (2 * j)) as usize))
    }

    pub fn whole(&self) -> Vec<Vector> {
        self.ring.identity(self.rank)
    }

    pub fn reduce_mod_p(&self) -> S3Module {
        let ring = ZMod::new(self.ring.p, 1);
        let r = |m: &Matrix| m.iter().map(|row| row.iter().map(|&x| x % ring.p).collect()).collect();
        S3Module { ring, rank: self.rank, sigma: r(&self.sigma), tau: r(&self.tau) }
    }
}

/// Multiplicities (n_1, n_χ, n_ε) of a module.
pub fn isotypic_decompose(m: &S3Module) -> Result<IsotypicType, S3Error> {
    m.isotypic_type_of(&m.whole())
}

fn perm_matrix(g: Perm) -> Matrix {
    let mut m = vec![vec![0; 3]; 3];
    for k in 0..3 {
        m[g.0[k]][k] = 1;
    }
    m
}

/// The permutation representation V = 1 + ε.
pub fn permutation_module(z: ZMod) -> Result<S3Module, S3Error> {
    S3Module::new(z, perm_matrix(SIGMA), perm_matrix(TAU))
}

pub fn sign_module(z: ZMod) -> Result<S3Module, S3Error> {
    S3Module::new(z, vec![vec![z.reduce(-1)]], vec![vec![1]])
}

pub fn trivial_module(z: ZMod) -> Result<S3Module, S3Error> {
    S3Module::new(z, vec![vec![1]], vec![vec![1]])
}

/// ε on the basis v+ = 2e0 - e1 - e2 (σ-fixed), v- = e1 - e2 (σ-negated)
/// of the sum-zero vectors of V.
pub fn standard_module(z: ZMod) -> Result<S3Module, S3Error> {
    // τ v+ = 2e1 - e2 - e0 = -v+/2 + 3v-/2,  τ v- = e2 - e0 = -v+/2 - v-/2
    let half = z.inv(2).unwrap();
    let h = |x: i64| z.mul(z.reduce(x), half);
    let tau = vec![vec![h(-1), h(-1)], vec![h(3), h(-1)]];
    let sigma = vec![vec![1, 0], vec![0, z.reduce(-1)]];
    S3Module::new(z, sigma, tau)
}

/// Left regular representation, basis indexed by `elements()`.
pub fn regular_module(z: ZMod) -> Result<S3Module, S3Error> {
    let els: Vec<Perm> = elements().into_iter().map(|e| e.2).collect();
    let mat = |g: Perm| {
        let mut m = vec![vec![0; 6]; 6];
        for (c, &h) in els.iter().enumerate() {
            let r = els.iter().position(|&x| x == g.compose(h)).unwrap();
            m[r][c] = 1;
        }
        m
    };
    S3Module::new(z, mat(SIGMA), mat(TAU))
}

pub fn direct_sum(a: &S3Module, b: &S3Module) -> S3Module {
    let n = a.rank + b.rank;
    let block = |x: &Matrix, y: &Matrix| {
        let mut m = vec![vec![0; n]; n];
        for i in 0..a.rank {
            m[i][..a.rank].copy_from_slice(&x[i]);
        }
        for i in 0..b.rank {
            m[a.rank + i][a.rank..].copy_from_slice(&y[i]);
        }
        m
    };
    S3Module { ring: a.ring, rank: n, sigma: block(&a.sigma, &b.sigma), tau: block(&a.tau, &b.tau) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_relations() {
        assert_eq!(SIGMA.compose(SIGMA), IDENTITY);
        assert_eq!(TAU.pow(3), IDENTITY);
        assert_eq!(SIGMA.compose(TAU).compose(SIGMA), TAU.pow(2));
        assert_eq!(elements().len(), 6);
        assert_eq!(SIGMA.sign(), -1);
        assert_eq!(TAU.sign(), 1);
    }

    #[test]
    fn basic_decompositions() {
        let z = ZMod::new(5, 2);
        assert_eq!(isotypic_decompose(&regular_module(z).unwrap()).unwrap(), IsotypicType::new(1, 1, 2));
        assert_eq!(isotypic_decompose(&permutation_module(z).unwrap()).unwrap(), IsotypicType::new(1, 0, 1));
        assert_eq!(isotypic_decompose(&standard_module(z).unwrap()).unwrap(), IsotypicType::new(0, 0, 1));
        let v_chi = direct_sum(&permutation_module(z).unwrap(), &sign_module(z).unwrap());
        assert_eq!(isotypic_decompose(&v_chi).unwrap(), IsotypicType::new(1, 1, 1));
        assert_eq!(IsotypicType::new(1, 1, 1).to_string(), "1 + χ + ε");
    }

    #[test]
    fn bad_action_rejected() {
        let z = ZMod::new(5, 1);
        let e = S3Module::new(z, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(e, S3Error::BadAction { relation: "τ³ = 1" });
        assert!(matches!(trivial_module(ZMod::new(3, 1)), Err(S3Error::BadPrime { p: 3 })));
    }
}
