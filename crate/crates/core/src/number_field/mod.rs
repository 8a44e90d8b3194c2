//! Cubic number fields `K = Q[x]/(f)`: maximal orders, element arithmetic,
//! prime decomposition, units and class-number checks.

mod classgroup;
mod lattice;
mod local;
mod quadratic;
mod units;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, factor_big, inv_mod_big, valuation};
use crate::linalg::{det, hnf, inverse_rational, left_kernel_mod, to_rational, vec_mat_rational, IntMatrix};
use crate::padic::PadicInt;
use crate::poly::MonicCubic;

pub use classgroup::{cubic_class_number_prime_to_p, ClassGroupCheck, DEFAULT_MINKOWSKI_CEILING};
pub use local::{primes_above, prime_splitting_type, PrimeIdeal, SplittingType};
pub use quadratic::{imaginary_quadratic_class_number, is_fundamental_discriminant};
pub use units::{find_fundamental_unit, UnitElement, UnitSearchParams, DEFAULT_HEIGHT_BOUND};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NfError {
    #[error("polynomial is reducible over Q (rational root {root})")]
    Reducible { root: i64 },
    #[error("{q} divides the index [O_K : Z[x]]; enable the index-divisor fallback")]
    IndexDivisor { q: u64 },
    #[error("field has signature {real} real / {complex} complex; expected one of each")]
    WrongSignature { real: u32, complex: u32 },
    #[error("no unit of infinite order with coordinates up to {bound}")]
    SearchExhausted { bound: u64 },
    #[error("{disc} is not a negative fundamental discriminant")]
    NotFundamental { disc: BigInt },
    #[error("Minkowski bound {bound:.1} exceeds the configured ceiling {ceiling}")]
    BoundTooLarge { bound: f64, ceiling: f64 },
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
}

/// Discriminant, irreducibility and signature of a monic cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicInvariants {
    pub f: MonicCubic,
    pub poly_disc: BigInt,
    /// (real embeddings, complex pairs)
    pub signature: (u32, u32),
}

pub fn cubic_invariants(f: &MonicCubic) -> Result<CubicInvariants, NfError> {
    if let Some(root) = f.rational_root() {
        return Err(NfError::Reducible { root });
    }
    let poly_disc = f.discriminant();
    let signature = if poly_disc.is_positive() { (3, 0) } else { (1, 1) };
    Ok(CubicInvariants { f: *f, poly_disc, signature })
}

/// Coordinates of an element of the maximal order on its integral basis.
pub type Coords = [BigInt; 3];

/// A cubic field together with its maximal order.
#[derive(Clone, Debug)]
pub struct CubicFieldData {
    pub f: MonicCubic,
    pub poly_disc: BigInt,
    pub field_disc: BigInt,
    pub index: BigInt,
    pub signature: (u32, u32),
    /// Row k holds the coefficients of the basis element w_k on 1, x, x^2.
    /// The basis is triangular: w_0 = 1, w_1 = (a + x)/d_1, w_2 = (b + c x + x^2)/d_2.
    pub integral_basis: [[BigRational; 3]; 3],
    basis_num: IntMatrix,
    basis_den: BigInt,
    power_to_basis: Vec<Vec<BigRational>>,
    mul_table: Vec<Vec<Coords>>,
    mul_table_small: Option<[[[i128; 3]; 3]; 3]>,
    real_root: f64,
    complex_root: Option<(f64, f64)>,
}

impl fmt::Display for CubicFieldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({}) with field discriminant {}", self.f, self.field_disc)
    }
}

/// Multiplies two power-basis vectors (integer numerators) modulo f.
fn mul_mod_f(f: &MonicCubic, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); 5];
    for i in 0..3 {
        for j in 0..3 {
            prod[i + j] += &a[i] * &b[j];
        }
    }
    // x^3 = -c2 x^2 - c1 x - c0
    let c = [BigInt::from(f.c0), BigInt::from(f.c1), BigInt::from(f.c2)];
    for k in (3..5).rev() {
        let top = std::mem::take(&mut prod[k]);
        for (j, cj) in c.iter().enumerate() {
            prod[k - 3 + j] -= &top * cj;
        }
    }
    prod.truncate(3);
    prod
}

/// An order given as `(1/den) * rowspan(num)` inside Q(x), power basis.
struct Order {
    num: IntMatrix,
    den: BigInt,
    inv: Vec<Vec<BigRational>>,
}

impl Order {
    fn new(num: IntMatrix, den: BigInt) -> Order {
        let inv = inverse_rational(&to_rational(&num)).expect("order basis must be nonsingular");
        Order { num, den, inv }
    }

    /// Coordinates of a power-basis vector `v / v_den` on the order basis.
    fn coords_of(&self, v: &[BigInt], v_den: &BigInt) -> Vec<BigRational> {
        let scaled: Vec<BigRational> =
            v.iter().map(|x| BigRational::new(x * &self.den, v_den.clone())).collect();
        vec_mat_rational(&scaled, &self.inv)
    }

    fn mul_table(&self, f: &MonicCubic) -> Vec<Vec<Coords>> {
        let den2 = &self.den * &self.den;
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let prod = mul_mod_f(f, &self.num[i], &self.num[j]);
                        let c = self.coords_of(&prod, &den2);
                        let c: Vec<BigInt> = c
                            .into_iter()
                            .map(|x| {
                                assert!(x.is_integer(), "order not closed under multiplication");
                                x.to_integer()
                            })
                            .collect();
                        [c[0].clone(), c[1].clone(), c[2].clone()]
                    })
                    .collect()
            })
            .collect()
    }
}

fn table_mul(table: &[Vec<Coords>], a: &[BigInt], b: &[BigInt]) -> Coords {
    let mut out: Coords = Default::default();
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            if b[j].is_zero() {
                continue;
            }
            let s = &a[i] * &b[j];
            for k in 0..3 {
                out[k] += &s * &table[i][j][k];
            }
        }
    }
    out
}

fn table_mul_mod(table: &[Vec<Coords>], a: &[BigInt], b: &[BigInt], q: &BigInt) -> Coords {
    let mut out = table_mul(table, a, b);
    for x in out.iter_mut() {
        *x = x.mod_floor(q);
    }
    out
}

/// One enlargement step at q: the multiplier ring of the q-radical.
/// Returns `None` when the order is already q-maximal.
fn enlarge_at(f: &MonicCubic, order: &Order, q: u64) -> Option<Order> {
    let table = order.mul_table(f);
    let qb = BigInt::from(q);
    let unit = |i: usize| -> Coords {
        let mut v: Coords = Default::default();
        v[i] = BigInt::one();
        v
    };
    let one: Coords = {
        let c = order.coords_of(&[BigInt::one(), BigInt::zero(), BigInt::zero()], &BigInt::one());
        std::array::from_fn(|i| c[i].to_integer())
    };
    // radical of O/qO = kernel of x -> x^(q^k) with q^k >= 3
    let mut exp = BigInt::from(q);
    while exp < BigInt::from(3) {
        exp *= q;
    }
    let frob_rows: Vec<Vec<u64>> = (0..3)
        .map(|i| {
            let base = unit(i);
            let mut acc = one.clone();
            let mut b = base.clone();
            let bits = exp.bits();
            for k in 0..bits {
                if exp.bit(k) {
                    acc = table_mul_mod(&table, &acc, &b, &qb);
                }
                b = table_mul_mod(&table, &b, &b, &qb);
            }
            acc.iter().map(|x| x.to_u64().unwrap()).collect()
        })
        .collect();
    let kernel = left_kernel_mod(&frob_rows, q);
    let mut gens: IntMatrix = kernel.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for i in 0..3 {
        gens.push(unit(i).iter().map(|x| x * q).collect());
    }
    let ideal = hnf(&gens);
    assert_eq!(ideal.len(), 3);
    let ideal_inv = inverse_rational(&to_rational(&ideal)).unwrap();
    // U = {a in O : a I in q I}
    let rows: Vec<Vec<u64>> = (0..3)
        .map(|a| {
            let mut row = Vec::with_capacity(9);
            for iota in &ideal {
                let prod = table_mul(&table, &unit(a), iota);
                let prod_q: Vec<BigRational> = prod.iter().map(|x| BigRational::from_integer(x.clone())).collect();
                let y = vec_mat_rational(&prod_q, &ideal_inv);
                for c in y {
                    assert!(c.is_integer());
                    row.push(c.to_integer().mod_floor(&qb).to_u64().unwrap());
                }
            }
            row
        })
        .collect();
    let u = left_kernel_mod(&rows, q);
    if u.is_empty() {
        return None;
    }
    // new order = (U + qO) / q, written over the power basis
    let mut new_rows: IntMatrix = Vec::new();
    for v in u.iter() {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        new_rows.push(combine_rows(&v, &order.num));
    }
    for i in 0..3 {
        new_rows.push(order.num[i].iter().map(|x| x * q).collect());
    }
    let h = hnf(&new_rows);
    Some(normalize_order(h, &order.den * q))
}

fn combine_rows(v: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    (0..m[0].len()).map(|j| v.iter().zip(m).map(|(c, row)| c * &row[j]).sum()).collect()
}

fn normalize_order(num: IntMatrix, den: BigInt) -> Order {
    let mut g = den.clone();
    for row in &num {
        for x in row {
            g = g.gcd(x);
        }
    }
    let num: IntMatrix = num.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect();
    Order::new(num, den / g)
}

/// Triangular basis 1, (a + x)/d1, (b + c x + x^2)/d2.
fn triangular(order: &Order) -> Order {
    let reversed: IntMatrix = order.num.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let h = hnf(&reversed);
    let mut rows: IntMatrix = h.into_iter().map(|r| r.into_iter().rev().collect()).collect();
    rows.reverse();
    Order::new(rows, order.den.clone())
}

/// Computes the maximal order of `Q[x]/(f)` together with the invariants.
pub fn maximal_order_basis(f: &MonicCubic) -> Result<CubicFieldData, NfError> {
    let inv = cubic_invariants(f)?;
    let identity: IntMatrix =
        (0..3).map(|i| (0..3).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut order = Order::new(identity, BigInt::one());
    for (q, e) in factor_big(&inv.poly_disc) {
        if e < 2 {
            continue;
        }
        let q = u64::try_from(q).expect("discriminant prime factor exceeds 64 bits");
        while let Some(bigger) = enlarge_at(f, &order, q) {
            order = bigger;
        }
    }
    let order = triangular(&order);
    let d = det(&order.num).abs();
    let den3 = num_traits::pow(order.den.clone(), 3);
    let (index, rem) = den3.div_rem(&d);
    assert!(rem.is_zero());
    let (field_disc, rem) = inv.poly_disc.div_rem(&(&index * &index));
    assert!(rem.is_zero());

    let integral_basis: [[BigRational; 3]; 3] = std::array::from_fn(|k| {
        std::array::from_fn(|j| BigRational::new(order.num[k][j].clone(), order.den.clone()))
    });
    let table = order.mul_table(f);
    let mul_table_small = small_table(&table);
    let power_to_basis = inverse_rational(
        &integral_basis.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    )
    .unwrap();
    let (reals, complex) = f.numeric_roots();
    Ok(CubicFieldData {
        f: *f,
        poly_disc: inv.poly_disc,
        field_disc,
        index,
        signature: inv.signature,
        integral_basis,
        basis_num: order.num,
        basis_den: order.den,
        power_to_basis,
        mul_table: table,
        mul_table_small,
        real_root: reals[0],
        complex_root: complex,
    })
}

fn small_table(table: &[Vec<Coords>]) -> Option<[[[i128; 3]; 3]; 3]> {
    let mut out = [[[0i128; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = table[i][j][k].to_i64()?;
                out[i][j][k] = v as i128;
            }
        }
    }
    Some(out)
}

impl CubicFieldData {
    pub fn degree(&self) -> usize {
        3
    }

    /// Primes dividing the field discriminant.
    pub fn ramified_primes(&self) -> Vec<u64> {
        factor_big(&self.field_disc).into_iter().map(|(q, _)| q as u64).collect()
    }

    pub fn one(&self) -> Coords {
        [BigInt::one(), BigInt::zero(), BigInt::zero()]
    }

    pub fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        table_mul(&self.mul_table, a, b)
    }

    pub fn pow(&self, a: &Coords, e: u64) -> Coords {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn neg(&self, a: &Coords) -> Coords {
        std::array::from_fn(|i| -&a[i])
    }

    /// Matrix of multiplication by `a` (row i = a * w_i).
    pub fn mult_matrix(&self, a: &Coords) -> IntMatrix {
        (0..3)
            .map(|i| {
                let mut e: Coords = Default::default();
                e[i] = BigInt::one();
                self.mul(a, &e).to_vec()
            })
            .collect()
    }

    pub fn norm(&self, a: &Coords) -> BigInt {
        det(&self.mult_matrix(a))
    }

    pub fn trace(&self, a: &Coords) -> BigInt {
        let m = self.mult_matrix(a);
        (0..3).map(|i| m[i][i].clone()).sum()
    }

    /// Norm in machine integers; `None` on overflow.
    pub fn norm_small(&self, c: &[i64; 3]) -> Option<i128> {
        let t = self.mul_table_small.as_ref()?;
        let mut m = [[0i128; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (k, entry) in row.iter_mut().enumerate() {
                let mut s: i128 = 0;
                for (j, &cj) in c.iter().enumerate() {
                    s = s.checked_add((cj as i128).checked_mul(t[j][i][k])?)?;
                }
                *entry = s;
            }
        }
        let minor = |a: usize, b: usize, c: usize, d: usize| -> Option<i128> {
            m[1][a].checked_mul(m[2][b])?.checked_sub(m[1][c].checked_mul(m[2][d])?)
        };
        let t0 = m[0][0].checked_mul(minor(1, 2, 2, 1)?)?;
        let t1 = m[0][1].checked_mul(minor(0, 2, 2, 0)?)?;
        let t2 = m[0][2].checked_mul(minor(0, 1, 1, 0)?)?;
        t0.checked_sub(t1)?.checked_add(t2)
    }

    /// Inverse of a unit; `None` if `a` is not a unit.
    pub fn unit_inverse(&self, a: &Coords) -> Option<Coords> {
        let m = self.mult_matrix(a);
        let inv = inverse_rational(&to_rational(&m))?;
        // b M = e_0
        let b: Vec<BigRational> = inv[0].clone();
        if b.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(std::array::from_fn(|i| b[i].to_integer()))
    }

    /// Coefficients on 1, x, x^2.
    pub fn to_power_basis(&self, a: &Coords) -> [BigRational; 3] {
        let v = combine_rows(a, &self.basis_num);
        std::array::from_fn(|j| BigRational::new(v[j].clone(), self.basis_den.clone()))
    }

    /// Coordinates of a power-basis element, if it is integral.
    pub fn from_power_basis(&self, v: &[BigRational; 3]) -> Option<Coords> {
        let c = vec_mat_rational(v, &self.power_to_basis);
        if c.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(std::array::from_fn(|i| c[i].to_integer()))
    }

    /// The element `c0 + c1 x + c2 x^2` with integer coefficients.
    pub fn from_integer_poly(&self, c: [i64; 3]) -> Coords {
        let v = c.map(|x| BigRational::from_integer(BigInt::from(x)));
        self.from_power_basis(&v).expect("Z[x] lies in the maximal order")
    }

    pub fn real_root(&self) -> f64 {
        self.real_root
    }

    /// Value under the (first) real embedding.
    pub fn real_embedding(&self, a: &Coords) -> f64 {
        let v = self.to_power_basis(a);
        let r = self.real_root;
        v.iter().rev().fold(0.0, |acc, c| acc * r + ratio_f64(c))
    }

    /// Value under the complex embedding with positive imaginary part.
    pub fn complex_embedding(&self, a: &Coords) -> Option<(f64, f64)> {
        let (zr, zi) = self.complex_root?;
        let v = self.to_power_basis(a);
        let mut acc = (0.0f64, 0.0f64);
        for c in v.iter().rev() {
            acc = (acc.0 * zr - acc.1 * zi + ratio_f64(c), acc.0 * zi + acc.1 * zr);
        }
        Some(acc)
    }

    /// Real embeddings (as vectors in R^3) of the basis, used for lattice
    /// reduction: (w(r), sqrt2 * Re w(z), sqrt2 * Im w(z)).
    pub(crate) fn basis_embeddings(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|k| {
            let mut e: Coords = Default::default();
            e[k] = BigInt::one();
            let r = self.real_embedding(&e);
            let (zr, zi) = self.complex_embedding(&e).unwrap_or((0.0, 0.0));
            [r, std::f64::consts::SQRT_2 * zr, std::f64::consts::SQRT_2 * zi]
        })
    }

    /// `(numerators, denominator)` with `a = (n0 + n1 x + n2 x^2) / den`.
    pub fn power_numerators(&self, a: &Coords) -> ([BigInt; 3], BigInt) {
        let v = combine_rows(a, &self.basis_num);
        (std::array::from_fn(|i| v[i].clone()), self.basis_den.clone())
    }

    /// Common denominator of the integral basis over the power basis.
    pub fn basis_denominator(&self) -> &BigInt {
        &self.basis_den
    }

    /// Image of `a` under the embedding `x -> r` into Z_q, where `r` is a
    /// root of f in Z_q known modulo `q^prec`. The result loses
    /// `v_q(denominator)` digits.
    pub fn eval_at_zq_root(&self, a: &Coords, q: u64, r: &BigInt, prec: u32) -> PadicInt {
        let m = big_pow(q, prec);
        let v = combine_rows(a, &self.basis_num);
        let val = (&v[0] + r * (&v[1] + r * &v[2])).mod_floor(&m);
        let den_v = valuation(&self.basis_den, q);
        let den_unit = &self.basis_den / big_pow(q, den_v);
        assert!(den_v < prec, "precision too low for the basis denominator");
        let pd = big_pow(q, den_v);
        assert!(
            val.mod_floor(&pd).is_zero(),
            "element is not integral at the prime of this root"
        );
        let out_prec = prec - den_v;
        let out_m = big_pow(q, out_prec);
        let inv = inv_mod_big(&den_unit, &out_m).unwrap();
        PadicInt::new(q, out_prec, (val / pd) * inv)
    }

    /// Human-readable power-basis form, e.g. `14*x - 19`.
    pub fn format_element(&self, a: &Coords) -> String {
        format_power_basis(&self.to_power_basis(a))
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn format_power_basis(v: &[BigRational; 3]) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (deg, c) in v.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        let mag = if abs.is_integer() { abs.to_integer().to_string() } else { format!("({abs})") };
        let body = match deg {
            0 => mag,
            _ => {
                let var = if deg == 1 { "x".to_string() } else { "x^2".to_string() };
                if abs.is_one() { var } else { format!("{mag}*{var}") }
            }
        };
        terms.push((neg, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        let k = cubic_invariants(&MonicCubic::new(0, 7, -12)).unwrap();
        assert_eq!(k.poly_disc, BigInt::from(-5260));
        assert_eq!(k.signature, (1, 1));
        let k = cubic_invariants(&MonicCubic::new(0, 1, 1)).unwrap();
        assert_eq!(k.poly_disc, BigInt::from(-31));
        assert_eq!(cubic_invariants(&MonicCubic::new(0, 0, -1)), Err(NfError::Reducible { root: 1 }));
        assert_eq!(cubic_invariants(&MonicCubic::new(0, -7, 7)).unwrap().signature, (3, 0));
    }

    #[test]
    fn flagship_maximal_order() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        assert_eq!(k.field_disc, BigInt::from(-1315));
        assert_eq!(k.index, BigInt::from(2));
        assert_eq!(k.ramified_primes(), vec![5, 263]);
        // 1 is the first basis element
        assert_eq!(k.to_power_basis(&k.one())[0], BigRational::one());
    }

    #[test]
    fn monogenic_fields() {
        let k = maximal_order_basis(&MonicCubic::new(0, 1, 1)).unwrap();
        assert_eq!(k.field_disc, BigInt::from(-31));
        assert_eq!(k.index, BigInt::one());
        for a in [-1i64, 1, 2, 4, 7] {
            let k = maximal_order_basis(&MonicCubic::new(0, a, 1)).unwrap();
            assert_eq!(k.field_disc, -BigInt::from(27 + 4 * a * a * a));
        }
    }

    #[test]
    fn non_monogenic_examples() {
        // x^3 - 2 has Z[2^(1/3)] maximal: disc -108
        let k = maximal_order_basis(&MonicCubic::new(0, 0, -2)).unwrap();
        assert_eq!(k.field_disc, BigInt::from(-108));
        // theta = 2 * 2^(1/3) gives index 4 in the same field... x^3 - 16
        let k = maximal_order_basis(&MonicCubic::new(0, 0, -16)).unwrap();
        assert_eq!(k.field_disc, BigInt::from(-108));
        // x^3 - 12: field Q(12^(1/3)), disc -3^3 * 2^2 * 3^2 ... compare with x^3 - 18
        let a = maximal_order_basis(&MonicCubic::new(0, 0, -12)).unwrap();
        let b = maximal_order_basis(&MonicCubic::new(0, 0, -18)).unwrap();
        assert_eq!(a.field_disc, b.field_disc);
    }

    #[test]
    fn element_arithmetic() {
        let k = maximal_order_basis(&MonicCubic::new(0, 7, -12)).unwrap();
        let eps = k.from_integer_poly([-19, 14, 0]);
        assert_eq!(k.norm(&eps).abs(), BigInt::one());
        let inv = k.unit_inverse(&eps).unwrap();
        assert_eq!(k.mul(&eps, &inv), k.one());
        assert_eq!(k.format_element(&eps), "14*x - 19");
        let small: [i64; 3] = std::array::from_fn(|i| eps[i].to_i64().unwrap());
        assert_eq!(k.norm_small(&small), Some(k.norm(&eps).to_i128().unwrap()));
        let x = k.from_integer_poly([0, 1, 0]);
        assert_eq!(k.norm(&x), BigInt::from(12));
        assert_eq!(k.trace(&x), BigInt::zero());
        let r = k.real_embedding(&x);
        assert!((r * r * r + 7.0 * r - 12.0).abs() < 1e-9);
    }
}
