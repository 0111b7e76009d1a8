//! Certified real arithmetic.
//!
//! [`BigFloat`] is a binary floating-point value with an explicit precision
//! and rounding direction on every operation; [`Enclosure`] pairs two of them
//! rounded outward. On top of these sit certified enclosures of `ln`, Euler's
//! constant, `ψ(x+1)` and `ψ'(x+1)`.
//!
//! Every top-level evaluation takes a [`PrecisionConfig`]. If the first
//! attempt misses its width target (or a caller's decision), the working
//! precision is doubled, at most `max_refinements` times.

mod digamma;
mod enclosure;
mod float;
mod gamma;
mod ln;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use digamma::{
    digamma_at, digamma_bracket_ratio, digamma_enclosure, shift_threshold, trigamma_at,
    trigamma_bracket_ratio, trigamma_enclosure,
};
pub use enclosure::{agrees_with_printed, Enclosure, EnclosureRecord, SignOutcome};
pub use float::{BigFloat, Rounding};
pub use gamma::{euler_gamma, gamma_at};
pub use ln::{ln2_at, ln_at, ln_enclosure};

pub const MIN_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub bits: u32,
    pub max_refinements: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            bits: 128,
            max_refinements: 8,
        }
    }
}

impl PrecisionConfig {
    pub fn new(bits: u32, max_refinements: u32) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::Domain(format!(
                "precision must be at least {MIN_BITS} bits, got {bits}"
            )));
        }
        Ok(Self {
            bits,
            max_refinements,
        })
    }

    pub fn with_bits(self, bits: u32) -> Self {
        Self { bits, ..self }
    }

    pub fn doubled(self) -> Self {
        self.with_bits(self.bits.saturating_mul(2))
    }
}

/// Outcome of a refinement loop.
#[derive(Debug, Clone)]
pub struct Refined<T> {
    pub value: T,
    /// Working precision of the attempt that produced `value`.
    pub bits: u32,
    /// Whether the acceptance predicate held.
    pub settled: bool,
}

/// Runs `attempt` at `start_bits`, doubling up to `max_refinements` times
/// until `accept` holds. Attempts that fail (typically an enclosure that still
/// straddles a pole) count as unsettled. Returns the last successful attempt,
/// or the last error if none succeeded.
pub fn refine<T>(
    max_refinements: u32,
    start_bits: u32,
    mut attempt: impl FnMut(u32) -> Result<T>,
    accept: impl Fn(&T) -> bool,
) -> Result<Refined<T>> {
    let mut last: Option<Refined<T>> = None;
    let mut last_err = None;
    let mut bits = start_bits;
    for round in 0..=max_refinements {
        match attempt(bits) {
            Ok(value) => {
                let settled = accept(&value);
                let r = Refined {
                    value,
                    bits,
                    settled,
                };
                if settled {
                    return Ok(r);
                }
                last = Some(r);
            }
            Err(e) => last_err = Some(e),
        }
        if round < max_refinements {
            bits = bits.saturating_mul(2);
        }
    }
    match (last, last_err) {
        (Some(r), _) => Ok(r),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("at least one attempt runs"),
    }
}

/// Refines until the enclosure meets `width <= 2^{slack - P} * max(1, |x|)`
/// for the caller's precision `P`, failing with the best enclosure otherwise.
pub(crate) fn refine_to_width(
    cfg: &PrecisionConfig,
    start_bits: u32,
    slack: i64,
    attempt: impl FnMut(u32) -> Result<Enclosure>,
) -> Result<Enclosure> {
    let target_bits = cfg.bits;
    let r = refine(cfg.max_refinements, start_bits, attempt, |e: &Enclosure| {
        e.meets_width_target_at(target_bits, slack)
    })?;
    if r.settled {
        Ok(r.value)
    } else {
        Err(Error::PrecisionExhausted {
            bits: r.bits,
            width: r.value.width_decimal(),
            best: Box::new(r.value),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig::new(31, 0).is_err());
        let cfg = PrecisionConfig::new(64, 2).unwrap();
        assert_eq!(cfg.doubled().bits, 128);
        assert_eq!(PrecisionConfig::default().bits, 128);
    }

    #[test]
    fn refine_doubles_until_accepted() {
        let mut seen = Vec::new();
        let r = refine(
            5,
            40,
            |bits| {
                seen.push(bits);
                Ok(bits)
            },
            |&b| b >= 300,
        )
        .unwrap();
        assert!(r.settled);
        assert_eq!(r.value, 320);
        assert_eq!(seen, vec![40, 80, 160, 320]);
    }

    #[test]
    fn refine_reports_exhaustion() {
        let r = refine(2, 40, Ok, |_| false).unwrap();
        assert!(!r.settled);
        assert_eq!(r.bits, 160);
        let e = refine::<u32>(1, 40, |_| Err(Error::ZeroDivisor), |_| true).unwrap_err();
        assert!(matches!(e, Error::ZeroDivisor));
    }
}
