use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{refine_to_width, Enclosure, PrecisionConfig};
use crate::error::{Error, Result};
use crate::exact::{frac, int, Rational};

const GUARD_BITS: u32 = 16;

/// `atanh(z) = z + z^3/3 + z^5/5 + ...` for `|z| <= 1/3`.
///
/// After stopping at term `j`, the tail is bounded by `|z|^{2j+1} / (1 - z^2)`,
/// which is below `2 |z|^{2j+1}` in this range.
fn atanh_small(z: &Rational, bits: u32) -> Enclosure {
    debug_assert!(z.abs() <= frac(1, 3));
    let ez = Enclosure::from_rational(z, bits);
    if z.is_zero() {
        return ez;
    }
    let z2 = ez.square();
    let mut power = ez;
    let mut sum = Enclosure::from_int(0, bits);
    let stop = -(bits as i64) - 4;
    let mut j: i64 = 0;
    loop {
        sum = sum.add(&power.mul_rational(&frac(1, 2 * j + 1)));
        power = power.mul(&z2);
        j += 1;
        let tail = power.abs().hi().mul_pow2(1);
        if tail.magnitude_exponent().is_none_or(|m| m <= stop) {
            return sum.add(&Enclosure::new(tail.neg(), tail, bits));
        }
    }
}

fn ln2_cache() -> &'static Mutex<HashMap<u32, Enclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `ln 2 = 2 atanh(1/3)` at working precision `bits`.
pub fn ln2_at(bits: u32) -> Enclosure {
    if let Some(e) = ln2_cache().lock().expect("ln2 cache").get(&bits) {
        return e.clone();
    }
    let e = atanh_small(&frac(1, 3), bits).mul_pow2(1);
    ln2_cache()
        .lock()
        .expect("ln2 cache")
        .insert(bits, e.clone());
    e
}

/// One evaluation of `ln x` at working precision `bits` (plus guard bits),
/// without refinement.
///
/// Writes `x = 2^k y` with `y` in `[sqrt(1/2), sqrt(2)]`, then
/// `ln x = k ln 2 + 2 atanh((y - 1) / (y + 1))`.
pub fn ln_at(x: &Rational, bits: u32) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln undefined at {x}")));
    }
    let w = bits + GUARD_BITS;
    if x.is_one() {
        return Ok(Enclosure::from_int(0, w));
    }
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = scale_pow2(x, -k);
    let half = frac(1, 2);
    let two = int(2);
    loop {
        let y2 = &y * &y;
        if y2 < half {
            y *= int(2);
            k -= 1;
        } else if y2 > two {
            y /= int(2);
            k += 1;
        } else {
            break;
        }
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let mut result = atanh_small(&z, w).mul_pow2(1);
    if k != 0 {
        let extra = 64 - k.unsigned_abs().leading_zeros();
        let ln2 = ln2_at(w + extra);
        result = result.add(&ln2.mul(&Enclosure::from_int(k, w + extra)));
    }
    Ok(result)
}

fn scale_pow2(x: &Rational, k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        x * Rational::from_integer(p)
    } else {
        x / Rational::from_integer(p)
    }
}

/// Certified `ln x` with width at most `2^{8-P} max(1, |ln x|)`.
pub fn ln_enclosure(x: &Rational, cfg: &PrecisionConfig) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln undefined at {x}")));
    }
    refine_to_width(cfg, cfg.bits, 8, |bits| ln_at(x, bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(bits: u32) -> PrecisionConfig {
        PrecisionConfig::new(bits, 4).unwrap()
    }

    /// Independent oracle: `ln 2 = sum_{k>=1} 1 / (k 2^k)`, tail below
    /// `1 / 2^K` after `K` terms.
    fn ln2_oracle(terms: u32) -> (Rational, Rational) {
        let mut s = Rational::zero();
        for k in 1..=terms {
            s += Rational::new(BigInt::one(), BigInt::from(k) << k);
        }
        let tail = Rational::new(BigInt::one(), BigInt::one() << terms);
        (s.clone(), s + tail)
    }

    #[test]
    fn ln_one_is_tiny() {
        let e = ln_enclosure(&int(1), &cfg(64)).unwrap();
        assert!(e.contains_rational(&Rational::zero()));
        assert!(e.width_at_most_pow2(8 - 64));
    }

    #[test]
    fn ln_two_matches_series_oracle() {
        let e = ln_enclosure(&int(2), &cfg(128)).unwrap();
        assert!(agrees(&e, "0.693147"));
        let (lo, hi) = ln2_oracle(200);
        assert!(e.lo().to_rational() <= hi && lo <= e.hi().to_rational());
        assert!(e.width_at_most_pow2(8 - 128));
    }

    fn agrees(e: &Enclosure, printed: &str) -> bool {
        super::super::agrees_with_printed(e, printed).unwrap()
    }

    #[test]
    fn ln_four_is_twice_ln_two() {
        let c = cfg(96);
        let l2 = ln_enclosure(&int(2), &c).unwrap();
        let l4 = ln_enclosure(&int(4), &c).unwrap();
        assert!(l4.intersect(&l2.mul_pow2(1)).is_some());
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(matches!(ln_enclosure(&int(0), &cfg(64)), Err(Error::Domain(_))));
        assert!(matches!(ln_enclosure(&frac(-1, 2), &cfg(64)), Err(Error::Domain(_))));
    }

    #[test]
    fn ln_of_products_and_reciprocals() {
        let c = cfg(80);
        for (a, b) in [(frac(3, 2), frac(7, 5)), (int(1000), frac(1, 999)), (frac(1, 3), int(3))] {
            let la = ln_enclosure(&a, &c).unwrap();
            let lb = ln_enclosure(&b, &c).unwrap();
            let lab = ln_enclosure(&(&a * &b), &c).unwrap();
            assert!(lab.intersect(&la.add(&lb)).is_some(), "{a} * {b}");
        }
    }

    #[test]
    fn ln_nests_under_doubling() {
        for x in [frac(3, 2), int(10), frac(1, 7), int(123456789)] {
            let coarse = ln_enclosure(&x, &cfg(64)).unwrap();
            let fine = ln_enclosure(&x, &cfg(128)).unwrap();
            assert!(coarse.contains(&fine), "{x}");
        }
    }

    #[test]
    fn ln_width_is_relative_for_large_arguments() {
        let x = Rational::from_integer(BigInt::one() << 300u32);
        let e = ln_enclosure(&x, &cfg(64)).unwrap();
        assert!(e.meets_width_target_at(64, 8));
        assert!(agrees(&e, "207.94415416798"));
    }
}
