//! LLL reduction and short-vector enumeration for rank-3 lattices given by
//! real embedding vectors. Floating point only steers the search; every
//! candidate it produces is re-checked exactly by the caller.

type V3 = [f64; 3];

fn dot(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// A lattice basis as real vectors together with the integer matrix that
/// expresses each reduced vector in the original coordinates.
#[derive(Clone, Debug)]
pub(crate) struct ReducedBasis {
    pub vectors: [V3; 3],
    pub transform: [[i64; 3]; 3],
}

/// LLL with delta = 0.99 on the rows of `basis`.
pub(crate) fn lll(basis: [V3; 3]) -> ReducedBasis {
    lll_from(ReducedBasis { vectors: basis, transform: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] })
}

pub(crate) fn lll_from(mut b: ReducedBasis) -> ReducedBasis {
    let delta = 0.99;
    let n = 3;
    let mut k = 1;
    let mut guard = 0;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b.vectors);
            let r = mu[k][j].round();
            if r != 0.0 && r.is_finite() && r.abs() < 9.0e15 {
                let ri = r as i64;
                for c in 0..3 {
                    b.vectors[k][c] -= r * b.vectors[j][c];
                    b.transform[k][c] -= ri * b.transform[j][c];
                }
            }
        }
        let (mu, bs) = gram_schmidt(&b.vectors);
        if bs[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1] {
            k += 1;
        } else {
            b.vectors.swap(k, k - 1);
            b.transform.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

fn gram_schmidt(v: &[V3; 3]) -> ([[f64; 3]; 3], [f64; 3]) {
    let mut mu = [[0.0; 3]; 3];
    let mut bstar = *v;
    let mut bs = [0.0; 3];
    for i in 0..3 {
        for j in 0..i {
            mu[i][j] = dot(&v[i], &bstar[j]) / bs[j];
            for c in 0..3 {
                bstar[i][c] -= mu[i][j] * bstar[j][c];
            }
        }
        bs[i] = dot(&bstar[i], &bstar[i]);
    }
    (mu, bs)
}

/// All nonzero integer combinations `x` (in the reduced basis) with
/// `|sum x_i b_i|^2 <= bound`, up to sign, mapped back to original
/// coordinates. A small relative slack absorbs rounding.
pub(crate) fn short_vectors(b: &ReducedBasis, bound: f64, limit: usize) -> Vec<[i64; 3]> {
    let (mu, bs) = gram_schmidt(&b.vectors);
    let bound = bound * (1.0 + 1e-9) + 1e-12;
    let mut out = Vec::new();
    let mut x = [0i64; 3];
    enumerate_level(2, bound, &mu, &bs, &mut x, &mut out, limit);
    out.into_iter()
        .filter(|x| x.iter().any(|&c| c != 0))
        .filter(|x| {
            // keep one of each +-pair: first nonzero coordinate positive
            x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
        })
        .map(|x| {
            let mut y = [0i64; 3];
            for (i, &xi) in x.iter().enumerate() {
                for c in 0..3 {
                    y[c] += xi * b.transform[i][c];
                }
            }
            y
        })
        .collect()
}

fn enumerate_level(
    level: usize,
    remaining: f64,
    mu: &[[f64; 3]; 3],
    bs: &[f64; 3],
    x: &mut [i64; 3],
    out: &mut Vec<[i64; 3]>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let center: f64 = -(level + 1..3).map(|j| mu[j][level] * x[j] as f64).sum::<f64>();
    let radius = (remaining / bs[level]).max(0.0).sqrt();
    let lo = (center - radius).ceil() as i64;
    let hi = (center + radius).floor() as i64;
    for xi in lo..=hi {
        x[level] = xi;
        let d = xi as f64 - center;
        let used = d * d * bs[level];
        if used > remaining {
            continue;
        }
        if level == 0 {
            out.push(*x);
            if out.len() >= limit {
                return;
            }
        } else {
            enumerate_level(level - 1, remaining - used, mu, bs, x, out, limit);
        }
    }
    x[level] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_skewed_basis() {
        let basis = [[1.0, 0.0, 0.0], [1000.0, 1.0, 0.0], [517.0, 300.0, 1.0]];
        let r = lll(basis);
        for v in &r.vectors {
            assert!(dot(v, v) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn enumerates_cube_points() {
        let r = lll([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let pts = short_vectors(&r, 1.0, 1000);
        assert_eq!(pts.len(), 3);
        let pts = short_vectors(&r, 2.0, 1000);
        assert_eq!(pts.len(), 9);
    }
}
