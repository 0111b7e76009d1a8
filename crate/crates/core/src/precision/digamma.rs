use num_traits::{One, Signed, Zero};

use super::gamma::{bernoulli_tail, pow2_tolerance};
use super::{ln_at, refine, refine_to_width, Enclosure, PrecisionConfig};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, int, Rational};

/// Smallest argument at which the asymptotic forms are applied directly.
/// Grows with the working precision so the series terms fall off quickly.
pub fn shift_threshold(bits: u32) -> u64 {
    u64::from(bits / 4).max(16)
}

fn check_domain(x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be positive, got {x}")))
    }
}

/// `(N, x + N)` with `x + N` at or above the threshold.
fn shifted(x: &Rational, bits: u32) -> (u64, Rational) {
    let thr = int(shift_threshold(bits) as i64);
    if *x >= thr {
        return (0, x.clone());
    }
    let n = (&thr - x).ceil().to_integer();
    let n: u64 = n.try_into().expect("shift fits in u64");
    (n, x + int(n as i64))
}

/// One evaluation of `psi(x + 1)` at working precision `bits`.
///
/// Shifts to `y = x + N`, then uses
/// `psi(y+1) = ln y + 1/(2y) - sum_{j<=K} B_{2j}/(2j y^{2j}) - theta T_{K+1}`
/// with `theta` in `[0, 1]`, stopping at the first term below `2^{-bits-24}`.
pub fn digamma_at(x: &Rational, bits: u32) -> Result<Enclosure> {
    check_domain(x)?;
    let (n, y) = shifted(x, bits);
    let mut exact = Rational::one() / (int(2) * &y);
    for j in 1..=n {
        exact -= (x + int(j as i64)).recip();
    }
    let (partial, omitted) = bernoulli_tail(&y, &pow2_tolerance(bits + 24));
    exact -= partial;
    Ok(ln_at(&y, bits)?
        .add_rational(&exact)
        .add_bracket(&Rational::zero(), &-omitted))
}

/// One evaluation of `psi'(x + 1)` at working precision `bits`.
///
/// `psi'(y+1) = 1/y - 1/(2y^2) + sum_{j<=K} B_{2j}/y^{2j+1} + Theta B_{2K+2}/y^{2K+3}`,
/// entirely rational apart from the final rounding.
pub fn trigamma_at(x: &Rational, bits: u32) -> Result<Enclosure> {
    check_domain(x)?;
    let (n, y) = shifted(x, bits);
    let y2 = &y * &y;
    let mut exact = y.recip() - (int(2) * &y2).recip();
    for j in 1..=n {
        let t = x + int(j as i64);
        exact += (&t * &t).recip();
    }
    let tol = pow2_tolerance(bits + 24);
    let mut ypow = &y2 * &y;
    let mut k: u32 = 1;
    let omitted = loop {
        let term = bernoulli_number(2 * k) / &ypow;
        if term.abs() < tol {
            break term;
        }
        exact += term;
        ypow *= &y2;
        k += 1;
    };
    let w = bits + 16;
    Ok(Enclosure::hull_of(&exact, &(&exact + omitted), w))
}

/// Certified `psi(x + 1)`, width at most `2^{8-P} max(1, |psi|)`.
pub fn digamma_enclosure(x: &Rational, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_domain(x)?;
    refine_to_width(cfg, cfg.bits, 8, |bits| digamma_at(x, bits))
}

/// Certified `psi'(x + 1)`, width at most `2^{8-P} max(1, |psi'|)`.
pub fn trigamma_enclosure(x: &Rational, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_domain(x)?;
    refine_to_width(cfg, cfg.bits, 8, |bits| trigamma_at(x, bits))
}

/// The first five terms of the `psi(x + 1)` expansion, past `ln x`.
fn digamma_head(x: &Rational) -> Rational {
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    (int(2) * x).recip() - (int(12) * &x2).recip() + (int(120) * &x4).recip()
        - (int(252) * &x6).recip()
}

fn trigamma_head(x: &Rational) -> Rational {
    let x2 = x * x;
    let x3 = &x2 * x;
    let x5 = &x3 * &x2;
    let x7 = &x5 * &x2;
    x.recip() - (int(2) * &x2).recip() + (int(6) * &x3).recip() - (int(30) * &x5).recip()
        + (int(42) * &x7).recip()
}

fn cancellation_bits(x: &Rational, order: u32) -> u32 {
    let mag = x.numer().bits().saturating_sub(x.denom().bits()) as u32;
    order * mag.max(1) + 32
}

fn bracket_ratio(
    cfg: &PrecisionConfig,
    start: u32,
    attempt: impl FnMut(u32) -> Result<Enclosure>,
) -> Result<Enclosure> {
    let r = refine(cfg.max_refinements, start, attempt, |e: &Enclosure| {
        e.strictly_between(&int(0), &int(1)) || e.meets_width_target_at(cfg.bits, 8)
    })?;
    Ok(r.value)
}

/// Enclosure of `theta_x = (psi(x+1) - ln x - head(x)) 240 x^8`, the
/// remainder factor of the five-term expansion.
pub fn digamma_bracket_ratio(x: &Rational, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_domain(x)?;
    let head = digamma_head(x);
    let scale = int(240) * crate::exact::pow(x, 8);
    bracket_ratio(cfg, cfg.bits + cancellation_bits(x, 8), |bits| {
        let psi = digamma_at(x, bits)?;
        let ln_x = ln_at(x, bits)?;
        Ok(psi.sub(&ln_x).add_rational(&-head.clone()).mul_rational(&scale))
    })
}

/// Enclosure of `Theta_x = (head'(x) - psi'(x+1)) 30 x^9`.
pub fn trigamma_bracket_ratio(x: &Rational, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_domain(x)?;
    let head = trigamma_head(x);
    let scale = int(30) * crate::exact::pow(x, 9);
    bracket_ratio(cfg, cfg.bits + cancellation_bits(x, 9), |bits| {
        let psi1 = trigamma_at(x, bits)?;
        Ok(psi1.neg().add_rational(&head).mul_rational(&scale))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, harmonic_exact, parse_rational};
    use crate::precision::{agrees_with_printed, euler_gamma};

    fn cfg(bits: u32) -> PrecisionConfig {
        PrecisionConfig::new(bits, 4).unwrap()
    }

    #[test]
    fn psi_two_is_one_minus_gamma() {
        let c = cfg(96);
        let psi = digamma_enclosure(&int(1), &c).unwrap();
        let g = euler_gamma(&c).unwrap();
        let expected = g.neg().add_rational(&int(1));
        assert!(psi.intersect(&expected).is_some());
        assert!(psi.meets_width_target_at(96, 8));
    }

    #[test]
    fn psi_five_is_h4_minus_gamma() {
        let c = cfg(96);
        let psi = digamma_enclosure(&int(4), &c).unwrap();
        let g = euler_gamma(&c).unwrap();
        let expected = g.neg().add_rational(&frac(25, 12));
        assert!(psi.intersect(&expected).is_some());
    }

    #[test]
    fn psi_integer_arguments_match_harmonic_numbers() {
        let c = cfg(80);
        let g = euler_gamma(&c).unwrap();
        for n in (1..=200).step_by(7) {
            let psi = digamma_enclosure(&int(n), &c).unwrap();
            let h = harmonic_exact(n as u64).unwrap();
            assert!(psi.intersect(&g.neg().add_rational(&h)).is_some(), "n = {n}");
        }
    }

    #[test]
    fn psi_nests_under_doubling() {
        let coarse = digamma_enclosure(&int(10), &cfg(64)).unwrap();
        let fine = digamma_enclosure(&int(10), &cfg(128)).unwrap();
        assert!(coarse.contains(&fine));
    }

    #[test]
    fn psi_at_half_integer() {
        // psi(3/2) = 2 - gamma - 2 ln 2
        let c = cfg(96);
        let psi = digamma_enclosure(&frac(1, 2), &c).unwrap();
        let expected = euler_gamma(&c)
            .unwrap()
            .add(&ln_at(&int(4), 96).unwrap())
            .neg()
            .add_rational(&int(2));
        assert!(psi.intersect(&expected).is_some());
    }

    /// Oracle for `psi'(2) = sum_{k>=2} 1/k^2`: partial sum to `M` plus the
    /// integral bracket `[1/(M+1), 1/M]` for the tail.
    #[test]
    fn trigamma_at_one_matches_partial_sum_oracle() {
        let m = 2000i64;
        let mut partial = Rational::zero();
        for k in 2..=m {
            partial += frac(1, k * k);
        }
        let lo = &partial + frac(1, m + 1);
        let hi = &partial + frac(1, m);
        let e = trigamma_enclosure(&int(1), &cfg(64)).unwrap();
        assert!(e.lo().to_rational() <= hi && lo <= e.hi().to_rational());
        assert!(agrees_with_printed(&e, "0.644934").unwrap());
    }

    #[test]
    fn trigamma_recurrence() {
        let c = cfg(96);
        let a = trigamma_enclosure(&int(3), &c).unwrap();
        let b = trigamma_enclosure(&int(4), &c).unwrap();
        assert!(a.sub(&b).contains_rational(&frac(1, 16)));
        let x = frac(7, 3);
        let a = trigamma_enclosure(&x, &c).unwrap();
        let b = trigamma_enclosure(&(&x + int(1)), &c).unwrap();
        let y = &x + int(1);
        assert!(a.sub(&b).contains_rational(&(&y * &y).recip()));
    }

    #[test]
    fn trigamma_nests_under_doubling() {
        let coarse = trigamma_enclosure(&int(7), &cfg(64)).unwrap();
        let fine = trigamma_enclosure(&int(7), &cfg(128)).unwrap();
        assert!(coarse.contains(&fine));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(digamma_enclosure(&int(0), &cfg(64)), Err(Error::Domain(_))));
        assert!(matches!(trigamma_enclosure(&frac(-1, 3), &cfg(64)), Err(Error::Domain(_))));
    }

    #[test]
    fn five_term_remainder_factors_lie_in_unit_interval() {
        let c = cfg(64);
        for x in [1, 2, 5, 10, 50] {
            let t = digamma_bracket_ratio(&int(x), &c).unwrap();
            assert!(t.strictly_between(&int(0), &int(1)), "theta at {x}: {t}");
            let t = trigamma_bracket_ratio(&int(x), &c).unwrap();
            assert!(t.strictly_between(&int(0), &int(1)), "Theta at {x}: {t}");
        }
        let limit = digamma_bracket_ratio(&int(50), &c).unwrap();
        assert!(limit.strictly_between(&parse_rational("0.99").unwrap(), &int(1)));
    }
}
