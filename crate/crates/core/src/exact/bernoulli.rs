use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

// B_0, B_1, ... computed so far. Odd entries past B_1 are stored as zero.
fn table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// The Bernoulli number `B_k` with the convention `B_1 = -1/2`.
///
/// Solves `sum_{j=0}^{k} C(k+1, j) B_j = 0` for ascending `k`, memoizing every
/// value on the way. The memo table is shared behind a mutex; results do not
/// depend on which thread filled it.
pub fn bernoulli_number(k: u32) -> Rational {
    let k = k as usize;
    if k >= 3 && k % 2 == 1 {
        return Rational::zero();
    }
    let mut values = table().lock().unwrap_or_else(|e| e.into_inner());
    while values.len() <= k {
        let next = values.len();
        let value = if next >= 3 && next % 2 == 1 {
            Rational::zero()
        } else {
            // Row `next + 1` of Pascal's triangle, built left to right.
            let n = next as u64 + 1;
            let mut c = BigInt::one();
            let mut sum = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * Rational::from_integer(c.clone());
                }
                c = c * (n - j as u64) / (j as u64 + 1);
            }
            -sum / Rational::from_integer(BigInt::from(n))
        };
        values.push(value);
    }
    values[k].clone()
}

/// `B_n(1/2)` for even `n`, from `B_n(1/2) = (2^{1-n} - 1) B_n`.
pub fn bernoulli_poly_at_half(two_k: u32) -> Result<Rational> {
    if two_k % 2 == 1 {
        return Err(Error::InvalidIndex {
            index: two_k as u64,
            reason: "B_n(1/2) is only provided for even n",
        });
    }
    if two_k == 0 {
        return Ok(Rational::one());
    }
    let scale = Rational::new(BigInt::one(), BigInt::one() << (two_k - 1)) - Rational::one();
    Ok(scale * bernoulli_number(two_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, frac, int, pow};

    /// Akiyama–Tanigawa algorithm. Produces B_k with the B_1 = +1/2
    /// convention, so it is only compared for k != 1.
    fn akiyama_tanigawa(k: usize) -> Rational {
        let mut row: Vec<Rational> = (0..=k).map(|m| frac(1, m as i64 + 1)).collect();
        for j in 1..=k {
            for m in 0..=(k - j) {
                row[m] = int(m as i64 + 1) * (&row[m] - &row[m + 1]);
            }
        }
        row[0].clone()
    }

    /// B_n(x) = sum_j C(n, j) B_j x^{n-j}, evaluated at x = 1/2.
    fn poly_eval_at_half(n: u32) -> Rational {
        let half = frac(1, 2);
        (0..=n)
            .map(|j| {
                Rational::from_integer(binomial(n as u64, j as u64))
                    * bernoulli_number(j)
                    * pow(&half, n - j)
            })
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), frac(-1, 2));
        assert_eq!(bernoulli_number(2), frac(1, 6));
        assert_eq!(bernoulli_number(3), int(0));
        assert_eq!(bernoulli_number(12), frac(-691, 2730));
    }

    #[test]
    fn matches_independent_algorithm() {
        for k in (0..=60).filter(|&k| k != 1) {
            assert_eq!(bernoulli_number(k as u32), akiyama_tanigawa(k), "B_{k}");
        }
    }

    #[test]
    fn at_half_examples() {
        assert_eq!(bernoulli_poly_at_half(0).unwrap(), int(1));
        assert_eq!(bernoulli_poly_at_half(2).unwrap(), frac(-1, 12));
        assert_eq!(bernoulli_poly_at_half(4).unwrap(), frac(7, 240));
        assert_eq!(bernoulli_poly_at_half(6).unwrap(), frac(-31, 1344));
    }

    #[test]
    fn odd_index_rejected() {
        assert!(matches!(
            bernoulli_poly_at_half(3),
            Err(Error::InvalidIndex { index: 3, .. })
        ));
    }

    #[test]
    fn scaling_identity_against_polynomial_expansion() {
        for n in (0..=20).step_by(2) {
            assert_eq!(bernoulli_poly_at_half(n).unwrap(), poly_eval_at_half(n), "n = {n}");
        }
    }

    #[test]
    fn scaling_identity_up_to_80() {
        for k in 1..=40u32 {
            let two_k = 2 * k;
            let expected = (Rational::new(BigInt::one(), BigInt::one() << (two_k - 1))
                - Rational::one())
                * bernoulli_number(two_k);
            assert_eq!(bernoulli_poly_at_half(two_k).unwrap(), expected);
        }
    }

    #[test]
    fn concurrent_callers_agree() {
        let handles: Vec<_> = (0..4)
            .map(|t| std::thread::spawn(move || (0..50u32).rev().map(|k| bernoulli_number(k + t)).collect::<Vec<_>>()))
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, r) in results.iter().enumerate() {
            for (i, v) in r.iter().enumerate() {
                let k = 49 - i as u32 + t as u32;
                assert_eq!(*v, bernoulli_number(k));
            }
        }
    }
}
