//! Class numbers of imaginary quadratic fields by counting reduced forms.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::NfError;
use crate::arith::{factor_u128, isqrt_u128};

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    let Some(d) = d.to_i128() else { return false };
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |n: u128| factor_u128(n).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Number of reduced primitive forms (a, b, c) with `b^2 - 4ac = disc`:
/// `|b| <= a <= c`, and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn imaginary_quadratic_class_number(disc: &BigInt) -> Result<u64, NfError> {
    if !disc.is_negative() || !is_fundamental_discriminant(disc) {
        return Err(NfError::NotFundamental { disc: disc.clone() });
    }
    let d = disc.to_i128().unwrap();
    let n = -d;
    let a_max = isqrt_u128((n / 3) as u128) as i128;
    let mut h = 0u64;
    for a in 1..=a_max {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && a == c {
                continue;
            }
            h += 1;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> u64 {
        imaginary_quadratic_class_number(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(h(-3), 1);
        assert_eq!(h(-4), 1);
        assert_eq!(h(-23), 3);
        assert_eq!(h(-31), 3);
        assert_eq!(h(-59), 3);
        assert_eq!(h(-1315), 6);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert!(imaginary_quadratic_class_number(&BigInt::from(-5260)).is_err());
        assert!(imaginary_quadratic_class_number(&BigInt::from(-12)).is_err());
        assert!(imaginary_quadratic_class_number(&BigInt::from(5)).is_err());
    }
}
