use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed};

use super::{ln_at, refine_to_width, Enclosure, PrecisionConfig};
use crate::error::Result;
use crate::exact::{bernoulli_number, harmonic_exact, int, Rational};

fn gamma_cache() -> &'static Mutex<HashMap<u32, Enclosure>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Rational tolerance `2^{-bits}`.
pub(super) fn pow2_tolerance(bits: u32) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::one() << bits)
}

/// Splits `sum_{j>=1} B_{2j} / (2j y^{2j})` into the partial sum up to the
/// first term below `tol` and that first omitted term.
pub(super) fn bernoulli_tail(y: &Rational, tol: &Rational) -> (Rational, Rational) {
    let y2 = y * y;
    let mut ypow = y2.clone();
    let mut partial = Rational::from_integer(0.into());
    let mut j: u32 = 1;
    loop {
        let term = bernoulli_number(2 * j) / (Rational::from_integer((2 * j).into()) * &ypow);
        if term.abs() < *tol {
            return (partial, term);
        }
        partial += term;
        ypow *= &y2;
        j += 1;
    }
}

/// One evaluation of Euler's constant at working precision `bits`:
///
/// `gamma = H_N - ln N - 1/(2N) + sum_{j<=K} B_{2j}/(2j N^{2j}) + theta T`,
/// `T = B_{2K+2}/((2K+2) N^{2K+2})`, `theta` in `[0, 1]`.
pub fn gamma_at(bits: u32) -> Result<Enclosure> {
    if let Some(e) = gamma_cache().lock().expect("gamma cache").get(&bits) {
        return Ok(e.clone());
    }
    let n = u64::from(bits / 4).max(16);
    let nq = int(n as i64);
    let tol = pow2_tolerance(bits + 24);
    let (partial, omitted) = bernoulli_tail(&nq, &tol);
    let exact = harmonic_exact(n)? - Rational::one() / (int(2) * &nq) + partial;
    let ln_n = ln_at(&nq, bits)?;
    let e = ln_n
        .neg()
        .add_rational(&exact)
        .add_bracket(&Rational::from_integer(0.into()), &omitted);
    gamma_cache()
        .lock()
        .expect("gamma cache")
        .insert(bits, e.clone());
    Ok(e)
}

/// Certified Euler's constant with width at most `2^{8-P}`.
pub fn euler_gamma(cfg: &PrecisionConfig) -> Result<Enclosure> {
    refine_to_width(cfg, cfg.bits, 8, gamma_at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    const GAMMA_30: &str = "0.577215664901532860606512090082";

    fn cfg(bits: u32) -> PrecisionConfig {
        PrecisionConfig::new(bits, 4).unwrap()
    }

    #[test]
    fn gamma_low_precision_digits() {
        let g = euler_gamma(&cfg(64)).unwrap();
        // Leading digits: gamma = 0.57721...
        assert!(g.strictly_between(&parse_rational("0.57721").unwrap(), &parse_rational("0.57722").unwrap()));
        assert!(g.width_at_most_pow2(8 - 64));
    }

    #[test]
    fn gamma_96_bits_matches_reference_digits() {
        let g = euler_gamma(&cfg(96)).unwrap();
        let lit = parse_rational("0.577215664901532860606512").unwrap();
        let upper = &lit + parse_rational("0.000000000000000000000001").unwrap();
        assert!(g.lo().to_rational() >= lit && g.hi().to_rational() <= upper);
    }

    #[test]
    fn gamma_nests_under_doubling() {
        let coarse = euler_gamma(&cfg(64)).unwrap();
        let fine = euler_gamma(&cfg(128)).unwrap();
        assert!(coarse.contains(&fine));
    }

    /// Oracle: the same expansion at a much larger `N`, evaluated with plain
    /// rationals and a generous truncation bound.
    #[test]
    fn gamma_agrees_with_large_n_oracle() {
        let bits = 160;
        let n = 200i64;
        let nq = int(n);
        let (partial, omitted) = bernoulli_tail(&nq, &pow2_tolerance(bits + 40));
        let exact = harmonic_exact(n as u64).unwrap() - Rational::one() / (int(2) * &nq) + partial;
        let oracle = ln_at(&nq, bits)
            .unwrap()
            .neg()
            .add_rational(&exact)
            .add_bracket(&int(0), &omitted);
        let g = euler_gamma(&cfg(128)).unwrap();
        assert!(g.intersect(&oracle).is_some());
        let lit = parse_rational(GAMMA_30).unwrap();
        let ulp = parse_rational("0.000000000000000000000000000001").unwrap();
        let around = Enclosure::hull_of(&(&lit - &ulp), &(&lit + &ulp), 200);
        assert!(around.contains(&g));
    }
}
