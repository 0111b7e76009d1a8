use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::float::{BigFloat, Rounding};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Closed interval `[lo, hi]` whose endpoints are `bits`-bit binary values,
/// rounded outward at every step. The exact value it stands for lies inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigFloat,
    hi: BigFloat,
    bits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignOutcome {
    Positive,
    Negative,
    Undetermined,
}

impl Enclosure {
    pub fn new(lo: BigFloat, hi: BigFloat, bits: u32) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Self { lo, hi, bits }
    }

    pub fn point(v: BigFloat, bits: u32) -> Self {
        let lo = BigFloat::round(v.mantissa().clone(), v.exponent(), bits, Rounding::Down);
        let hi = BigFloat::round(v.mantissa().clone(), v.exponent(), bits, Rounding::Up);
        Self { lo, hi, bits }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), bits)
    }

    /// Enclosure of `num / den`; the fraction need not be reduced.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        Self {
            lo: BigFloat::from_ratio(num, den, bits, Rounding::Down),
            hi: BigFloat::from_ratio(num, den, bits, Rounding::Up),
            bits,
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Self::point(BigFloat::from_int(n), bits)
    }

    /// Smallest enclosure containing both `a` and `b` (rationals).
    pub fn hull_of(a: &Rational, b: &Rational, bits: u32) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Self {
            lo: BigFloat::from_rational(lo, bits, Rounding::Down),
            hi: BigFloat::from_rational(hi, bits, Rounding::Up),
            bits,
        }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, self.bits, Rounding::Up)
    }

    pub fn midpoint(&self) -> BigFloat {
        self.lo
            .add(&self.hi, self.bits + 1, Rounding::Nearest)
            .mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self.bits.min(other.bits);
        Self {
            lo: self.lo.add(&other.lo, bits, Rounding::Down),
            hi: self.hi.add(&other.hi, bits, Rounding::Up),
            bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bits = self.bits.min(other.bits);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.mul(b, bits, Rounding::Down))
            .min()
            .expect("four products");
        let hi = pairs
            .iter()
            .map(|(a, b)| a.mul(b, bits, Rounding::Up))
            .max()
            .expect("four products");
        Self { lo, hi, bits }
    }

    pub fn square(&self) -> Self {
        if self.lo.signum() != Ordering::Less {
            self.mul(self)
        } else if self.hi.signum() != Ordering::Greater {
            self.neg().mul(&self.neg())
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Self {
                lo: BigFloat::zero(),
                hi: m.mul(&m, self.bits, Rounding::Up),
                bits: self.bits,
            }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::ZeroDivisor);
        }
        let one = BigFloat::from_int(1);
        Ok(Self {
            lo: one.div(&self.hi, self.bits, Rounding::Down),
            hi: one.div(&self.lo, self.bits, Rounding::Up),
            bits: self.bits,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        self.add(&Self::from_rational(q, self.bits))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q, self.bits))
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            bits: self.bits,
        }
    }

    /// `|x|` for every `x` in the enclosure.
    pub fn abs(&self) -> Self {
        if self.lo.signum() != Ordering::Less {
            self.clone()
        } else if self.hi.signum() != Ordering::Greater {
            self.neg()
        } else {
            Self {
                lo: BigFloat::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
                bits: self.bits,
            }
        }
    }

    /// Re-rounds the endpoints outward to `bits`, or relabels if widening.
    pub fn with_bits(&self, bits: u32) -> Self {
        Self {
            lo: BigFloat::round(self.lo.mantissa().clone(), self.lo.exponent(), bits, Rounding::Down),
            hi: BigFloat::round(self.hi.mantissa().clone(), self.hi.exponent(), bits, Rounding::Up),
            bits,
        }
    }

    /// Intersection; `None` when disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Self {
            lo,
            hi,
            bits: self.bits.max(other.bits),
        })
    }

    /// Widens the enclosure so it also covers `[self.lo + a, self.hi + b]`
    /// for the rational offset bracket `{a, b}` (in either order).
    pub fn add_bracket(&self, a: &Rational, b: &Rational) -> Self {
        self.add(&Self::hull_of(a, b, self.bits))
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() != Ordering::Greater && self.hi.signum() != Ordering::Less
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains(&self, inner: &Self) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() == Ordering::Greater
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.signum() == Ordering::Less
    }

    pub fn sign(&self) -> SignOutcome {
        if self.is_strictly_positive() {
            SignOutcome::Positive
        } else if self.is_strictly_negative() {
            SignOutcome::Negative
        } else {
            SignOutcome::Undetermined
        }
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// `a < x < b` for every `x` in the enclosure.
    pub fn strictly_between(&self, a: &Rational, b: &Rational) -> bool {
        &self.lo.to_rational() > a && &self.hi.to_rational() < b
    }

    /// Width is at most `2^exp`.
    pub fn width_at_most_pow2(&self, exp: i64) -> bool {
        let w = self.width();
        w.magnitude_exponent().is_none_or(|m| m <= exp)
    }

    /// Width within `2^{slack - bits} * max(1, |x|)` for the enclosure's own
    /// precision.
    pub fn meets_width_target(&self, slack: i64) -> bool {
        self.meets_width_target_at(self.bits, slack)
    }

    /// Width within `2^{slack - bits} * max(1, |x|)` for a caller-chosen
    /// precision.
    pub fn meets_width_target_at(&self, bits: u32, slack: i64) -> bool {
        let scale = self
            .lo
            .abs()
            .max(self.hi.abs())
            .magnitude_exponent()
            .unwrap_or(0)
            .max(0);
        self.width_at_most_pow2(slack - bits as i64 + scale)
    }

    /// Number of significant decimal digits needed to tell `lo` from `hi`,
    /// plus two guard digits.
    pub fn display_digits(&self) -> u32 {
        let width = self.width();
        let top = self.lo.abs().max(self.hi.abs());
        let Some(top_exp) = top.magnitude_exponent() else {
            return 3;
        };
        let width_exp = match width.magnitude_exponent() {
            Some(e) => e,
            None => top_exp - self.bits as i64,
        };
        let binary_digits = (top_exp - width_exp).max(0) as f64;
        (binary_digits * std::f64::consts::LOG10_2).ceil() as u32 + 2
    }

    pub fn lo_decimal(&self) -> String {
        self.lo.to_decimal(self.display_digits(), Rounding::Down)
    }

    pub fn hi_decimal(&self) -> String {
        self.hi.to_decimal(self.display_digits(), Rounding::Up)
    }

    pub fn width_decimal(&self) -> String {
        self.width().to_decimal(3, Rounding::Up)
    }

    pub fn record(&self) -> EnclosureRecord {
        EnclosureRecord {
            lo: self.lo_decimal(),
            hi: self.hi_decimal(),
            bits: self.bits,
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_decimal(), self.hi_decimal())
    }
}

/// Serialized form: decimal endpoints rounded outward, plus the precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureRecord {
    pub lo: String,
    pub hi: String,
    pub bits: u32,
}

impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

/// Whether `[lo, hi]` lies within half a unit of the last digit of a printed
/// decimal value, i.e. the printed value is a correct rounding of everything
/// in the enclosure.
pub fn agrees_with_printed(e: &Enclosure, printed: &str) -> Result<bool> {
    let value = crate::exact::parse_rational(printed)?;
    let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
    let half_unit = Rational::new(
        BigInt::from(1),
        BigInt::from(2) * BigInt::from(10u32).pow(decimals),
    );
    let lo = e.lo().to_rational();
    let hi = e.hi().to_rational();
    Ok((&lo - &value).abs() <= half_unit && (&hi - &value).abs() <= half_unit)
}
