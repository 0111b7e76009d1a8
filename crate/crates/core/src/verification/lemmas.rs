//! Sampled checks of the two-sided bounds on `psi` and `psi'` at real `x`.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{classify, decided, error_outcome, interval_text, require_positive, Check, Outcome};
use super::{Status, Suite, VerificationReport, Witness};
use crate::error::Result;
use crate::exact::{frac, int, LaurentPolynomial, Rational};
use crate::precision::{
    digamma_at, digamma_bracket_ratio, ln_at, refine, trigamma_at, trigamma_bracket_ratio,
    Enclosure, PrecisionConfig,
};

fn inv(terms: &[(i64, i64, i32)]) -> LaurentPolynomial {
    LaurentPolynomial::from_inverse_powers(terms.iter().map(|&(n, d, e)| (frac(n, d), e)))
}

/// Bounds on `2 psi(x+1) - ln(x(x+1))`.
pub(crate) fn psi_pair_bounds() -> (LaurentPolynomial, LaurentPolynomial) {
    let upper = inv(&[(1, 3, 2), (-1, 3, 3), (4, 15, 4), (-1, 5, 5), (10, 63, 6)]);
    let lower = &upper + &inv(&[(-1, 7, 7)]);
    (lower, upper)
}

/// Bounds on `1/x + 1/(x+1) - 2 psi'(x+1)`, with the `x^-4` coefficient
/// passed in so the misprinted `-1/4` can be replayed next to the correct `-1`.
pub(crate) fn trigamma_pair_bounds(quartic: Rational) -> (LaurentPolynomial, LaurentPolynomial) {
    let upper = &inv(&[(2, 3, 3), (16, 15, 5), (-1, 1, 6), (20, 21, 7)])
        + &LaurentPolynomial::monomial(quartic, -4);
    let lower = &upper + &inv(&[(-1, 1, 8)]);
    (lower, upper)
}

/// Bounds on `1/(x+1/2) - psi'(x+1)`, minus the common `1/(x+1/2)` term.
pub(crate) fn trigamma_half_bounds() -> (LaurentPolynomial, LaurentPolynomial) {
    let upper = inv(&[(-1, 1, 1), (1, 2, 2), (-1, 6, 3), (1, 30, 5)]);
    let lower = &upper + &inv(&[(-1, 42, 7)]);
    (lower, upper)
}

/// Bounds on `psi(x+1) - ln(x+1/2)`.
pub(crate) fn psi_half_bounds() -> (LaurentPolynomial, LaurentPolynomial) {
    let lower = inv(&[
        (1, 24, 2),
        (-1, 24, 3),
        (23, 960, 4),
        (-1, 160, 5),
        (-11, 8064, 6),
        (-1, 896, 7),
    ]);
    let upper = &lower + &inv(&[(143, 30720, 8)]);
    (lower, upper)
}

fn start_bits(cfg: &PrecisionConfig, x: &Rational, order: u32) -> u32 {
    let mag = x.to_f64().unwrap_or(f64::MAX).max(2.0).log2();
    cfg.bits + (order as f64 * mag).ceil() as u32 + 32
}

type Middle = fn(&Rational, u32) -> Result<Enclosure>;

struct Chain {
    what: &'static str,
    bounds: (LaurentPolynomial, LaurentPolynomial),
    /// Exact term added to both bounds.
    common: fn(&Rational) -> Rational,
    middle: Middle,
}

fn zero_term(_: &Rational) -> Rational {
    Rational::zero()
}

fn check_chain(chain: &Chain, x: &Rational, cfg: &PrecisionConfig) -> Result<Outcome> {
    let c = (chain.common)(x);
    let lo = chain.bounds.0.eval(x)? + &c;
    let hi = chain.bounds.1.eval(x)? + &c;
    let r = refine(
        cfg.max_refinements,
        start_bits(cfg, x, 9),
        |bits| (chain.middle)(x, bits),
        |e| decided(e, Some(&lo), Some(&hi)),
    );
    let e = match r {
        Ok(r) => r.value,
        Err(err) => return Ok(error_outcome(format!("x = {x}"), &err)),
    };
    let status = classify(&e, Some(&lo), Some(&hi));
    let witness = (status != Status::Proved).then(|| {
        Witness::new(
            format!("x = {x}"),
            e.to_string(),
            interval_text(Some(&lo), Some(&hi)),
        )
    });
    Ok((status, witness))
}

fn run_chain(chain: &Chain, samples: &[Rational], cfg: &PrecisionConfig) -> Result<Vec<Check>> {
    samples
        .par_iter()
        .map(|x| {
            let (status, witness) = check_chain(chain, x, cfg)?;
            let label = format!("{} at x = {x} (sampled)", chain.what);
            Ok(match witness {
                Some(w) => Check::with_witness(label, status, w),
                None => Check::proved(label),
            })
        })
        .collect()
}

fn psi_pair(x: &Rational, bits: u32) -> Result<Enclosure> {
    let psi = digamma_at(x, bits)?;
    Ok(psi.mul_pow2(1).sub(&ln_at(&(x * (x + Rational::one())), bits)?))
}

fn trigamma_pair(x: &Rational, bits: u32) -> Result<Enclosure> {
    let lead = x.recip() + (x + Rational::one()).recip();
    Ok(trigamma_at(x, bits)?.mul_pow2(1).neg().add_rational(&lead))
}

fn half(x: &Rational) -> Rational {
    (x + frac(1, 2)).recip()
}

fn trigamma_half(x: &Rational, bits: u32) -> Result<Enclosure> {
    Ok(trigamma_at(x, bits)?.neg().add_rational(&half(x)))
}

fn psi_half(x: &Rational, bits: u32) -> Result<Enclosure> {
    Ok(digamma_at(x, bits)?.sub(&ln_at(&(x + frac(1, 2)), bits)?))
}

/// `2 psi(x+1) - ln(x(x+1))` and `1/x + 1/(x+1) - 2 psi'(x+1)` strictly
/// inside their two-sided Laurent bounds at each sample. The trigamma bounds
/// are also replayed with the misprinted `-1/(4x^4)` term; where that
/// variant fails, a finding is recorded.
pub fn verify_lemma2(samples: &[Rational], cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_positive(samples)?;
    let mut report = VerificationReport::new(Suite::Lemmas);
    let chains = [
        Chain {
            what: "2psi(x+1) - ln(x(x+1)) strictly inside its 6- and 5-term bounds",
            bounds: psi_pair_bounds(),
            common: zero_term,
            middle: psi_pair,
        },
        Chain {
            what: "1/x + 1/(x+1) - 2psi'(x+1) strictly inside its 6- and 5-term bounds",
            bounds: trigamma_pair_bounds(int(-1)),
            common: zero_term,
            middle: trigamma_pair,
        },
    ];
    for chain in &chains {
        report.checks.extend(run_chain(chain, samples, cfg)?);
    }

    let printed = Chain {
        what: "",
        bounds: trigamma_pair_bounds(frac(-1, 4)),
        common: zero_term,
        middle: trigamma_pair,
    };
    let failing: Vec<String> = samples
        .par_iter()
        .map(|x| Ok((x, check_chain(&printed, x, cfg)?.0)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, s)| *s == Status::Refuted)
        .map(|(x, _)| x.to_string())
        .collect();
    if !failing.is_empty() {
        report.finding(format!(
            "bounds on 1/x + 1/(x+1) - 2psi'(x+1) written with -1/(4x^4) are false at x = {}; \
             the expansion coefficient is -1/x^4, which is what the checks above use",
            failing.join(", ")
        ));
    }
    Ok(report)
}

/// `1/(x+1/2) - psi'(x+1)` and `psi(x+1) - ln(x+1/2)` strictly inside their
/// two-sided Laurent bounds at each sample.
pub fn verify_lemma3(samples: &[Rational], cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_positive(samples)?;
    let mut report = VerificationReport::new(Suite::Lemmas);
    let chains = [
        Chain {
            what: "1/(x+1/2) - psi'(x+1) strictly inside its bounds",
            bounds: trigamma_half_bounds(),
            common: half,
            middle: trigamma_half,
        },
        Chain {
            what: "psi(x+1) - ln(x+1/2) strictly inside its bounds",
            bounds: psi_half_bounds(),
            common: zero_term,
            middle: psi_half,
        },
    ];
    for chain in &chains {
        report.checks.extend(run_chain(chain, samples, cfg)?);
    }
    Ok(report)
}

/// The remainder factors of the five-term `psi` and `psi'` expansions lie
/// strictly inside `(0, 1)` at each sample.
pub fn verify_bracket_ratios(samples: &[Rational], cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_positive(samples)?;
    let zero = int(0);
    let one = int(1);
    type Ratio = fn(&Rational, &PrecisionConfig) -> Result<Enclosure>;
    let kinds: [(&str, Ratio); 2] = [
        ("psi remainder factor theta_x", digamma_bracket_ratio),
        ("psi' remainder factor Theta_x", trigamma_bracket_ratio),
    ];
    let mut report = VerificationReport::new(Suite::Lemmas);
    for (name, ratio) in kinds {
        let checks: Vec<Check> = samples
            .par_iter()
            .map(|x| {
                let label = format!("{name} in (0, 1) at x = {x} (sampled)");
                let (status, witness) = match ratio(x, cfg) {
                    Ok(e) => {
                        let s = classify(&e, Some(&zero), Some(&one));
                        let w = Witness::new(format!("x = {x}"), e.to_string(), "in open interval (0, 1)");
                        (s, (s != Status::Proved).then_some(w))
                    }
                    Err(err) => error_outcome(format!("x = {x}"), &err),
                };
                match witness {
                    Some(w) => Check::with_witness(label, status, w),
                    None => Check::proved(label),
                }
            })
            .collect();
        report.checks.extend(checks);
    }
    Ok(report)
}
