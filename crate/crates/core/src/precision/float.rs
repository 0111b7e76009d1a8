use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, ties to even.
    Nearest,
}

/// Binary floating-point value `mantissa * 2^exponent`.
///
/// Stored canonically: the mantissa is odd, or zero with exponent zero. The
/// precision is not a property of the value; every operation takes the target
/// precision in bits and a rounding direction, and the result mantissa has at
/// most that many bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
}

fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

impl BigFloat {
    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::exact(n.into(), 0)
    }

    /// `mantissa * 2^exponent` without rounding.
    pub fn exact(mantissa: BigInt, exponent: i64) -> Self {
        let mut v = Self { mantissa, exponent };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        match self.mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Significant bits in the mantissa.
    pub fn precision(&self) -> u64 {
        bit_len(&self.mantissa)
    }

    /// Position of the leading bit: `|x|` lies in `[2^(m-1), 2^m)`. `None` for zero.
    pub fn magnitude_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exponent + bit_len(&self.mantissa) as i64)
    }

    /// Rounds `mantissa * 2^exponent` to `prec` bits.
    pub fn round(mantissa: BigInt, exponent: i64, prec: u32, rnd: Rounding) -> Self {
        let len = bit_len(&mantissa);
        if len <= prec as u64 {
            return Self::exact(mantissa, exponent);
        }
        let drop = len - prec as u64;
        let floor = &mantissa >> drop;
        let exact = mantissa.magnitude().trailing_zeros().unwrap_or(0) >= drop;
        let kept = if exact {
            floor
        } else {
            match rnd {
                Rounding::Down => floor,
                Rounding::Up => floor + 1,
                Rounding::Nearest => {
                    let half = BigInt::one() << (drop - 1);
                    let rest = &mantissa - (&floor << drop);
                    match rest.cmp(&half) {
                        Ordering::Less => floor,
                        Ordering::Greater => floor + 1,
                        Ordering::Equal if floor.is_odd() => floor + 1,
                        Ordering::Equal => floor,
                    }
                }
            }
        };
        Self::exact(kept, exponent + drop as i64)
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, rnd: Rounding) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        // Enough quotient bits that the sticky bit below sits past the
        // rounding position.
        let shift = (prec as i64 + 2 + bit_len(&den) as i64 - bit_len(&num) as i64).max(0);
        let (q, r) = (num << shift as u64).div_mod_floor(&den);
        if r.is_zero() {
            Self::round(q, -shift, prec, rnd)
        } else {
            // q < num/den * 2^shift < q + 1; 2q + 1 stands in for the tail.
            Self::round((q << 1u32) + 1, -shift - 1, prec, rnd)
        }
    }

    pub fn from_rational(q: &Rational, prec: u32, rnd: Rounding) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec, rnd)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(
                self.mantissa.clone(),
                BigInt::one() << self.exponent.unsigned_abs(),
            )
        }
    }

    /// Nearest `f64`, for display and coarse heuristics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = Self::round(self.mantissa.clone(), self.exponent, 60, Rounding::Nearest);
        let m = r.mantissa.to_f64().unwrap_or(f64::NAN);
        let e = r.exponent.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        // Split the scaling to stay clear of intermediate overflow.
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    pub fn neg(&self) -> Self {
        Self {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    fn aligned(a: &Self, b: &Self) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        (
            &a.mantissa << (a.exponent - e) as u64,
            &b.mantissa << (b.exponent - e) as u64,
            e,
        )
    }

    pub fn add(&self, other: &Self, prec: u32, rnd: Rounding) -> Self {
        if self.is_zero() {
            return Self::round(other.mantissa.clone(), other.exponent, prec, rnd);
        }
        if other.is_zero() {
            return Self::round(self.mantissa.clone(), self.exponent, prec, rnd);
        }
        // When the exponents are far apart the smaller operand only affects
        // the sticky bit; replace it by a tiny stand-in of the same sign so
        // the aligned mantissa stays small.
        let (big, small) = if self.magnitude_exponent() >= other.magnitude_exponent() {
            (self, other)
        } else {
            (other, self)
        };
        let big_low = big.exponent;
        let small_top = small.magnitude_exponent().unwrap_or(0);
        let floor_pos = big.magnitude_exponent().unwrap_or(0) - prec as i64 - 4;
        if small_top < big_low.min(floor_pos) {
            let stand_in = Self {
                mantissa: BigInt::from(small.mantissa.signum()),
                exponent: big_low.min(floor_pos) - 2,
            };
            let (a, b, e) = Self::aligned(big, &stand_in);
            return Self::round(a + b, e, prec, rnd);
        }
        let (a, b, e) = Self::aligned(self, other);
        Self::round(a + b, e, prec, rnd)
    }

    pub fn sub(&self, other: &Self, prec: u32, rnd: Rounding) -> Self {
        self.add(&other.neg(), prec, rnd)
    }

    pub fn mul(&self, other: &Self, prec: u32, rnd: Rounding) -> Self {
        Self::round(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            prec,
            rnd,
        )
    }

    pub fn div(&self, other: &Self, prec: u32, rnd: Rounding) -> Self {
        let q = Self::from_ratio(&self.mantissa, &other.mantissa, prec, rnd);
        q.mul_pow2(self.exponent - other.exponent)
    }

    /// Decimal rendering rounded in direction `rnd` with `digits` significant
    /// digits, in scientific notation when the exponent is far from zero.
    pub fn to_decimal(&self, digits: u32, rnd: Rounding) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let q = self.to_rational();
        // Decimal exponent estimate from the binary one; corrected below.
        let mag = self.magnitude_exponent().unwrap_or(0);
        let mut e10 = ((mag - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let scaled = scale_pow10(&q.abs(), digits as i64 - 1 - e10);
            let low = pow10(digits - 1);
            if scaled < Rational::from_integer(low.clone()) {
                e10 -= 1;
                continue;
            }
            if scaled >= Rational::from_integer(&low * 10) {
                e10 += 1;
                continue;
            }
            break;
        }
        let scaled = scale_pow10(&q, digits as i64 - 1 - e10);
        let int = match rnd {
            Rounding::Down => scaled.floor().to_integer(),
            Rounding::Up => scaled.ceil().to_integer(),
            Rounding::Nearest => scaled.round().to_integer(),
        };
        // Rounding may carry into a new digit (e.g. 9.99 -> 10.0).
        let (int, e10) = if int.abs() >= pow10(digits) {
            (int / 10, e10 + 1)
        } else {
            (int, e10)
        };
        format_decimal(&int, digits, e10)
    }
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

fn scale_pow10(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        q * Rational::from_integer(pow10(k as u32))
    } else {
        q / Rational::from_integer(pow10(k.unsigned_abs() as u32))
    }
}

// `int` has exactly `digits` digits and represents int * 10^(e10 - digits + 1).
fn format_decimal(int: &BigInt, digits: u32, e10: i64) -> String {
    let sign = if int.is_negative() { "-" } else { "" };
    let s = int.abs().to_string();
    let s = format!("{s:0>width$}", width = digits as usize);
    if (-6..=20).contains(&e10) {
        if e10 >= 0 {
            let point = (e10 + 1) as usize;
            if point >= s.len() {
                format!("{sign}{s}{}", "0".repeat(point - s.len()))
            } else {
                format!("{sign}{}.{}", &s[..point], &s[point..])
            }
        } else {
            format!("{sign}0.{}{s}", "0".repeat((-e10 - 1) as usize))
        }
    } else if s.len() == 1 {
        format!("{sign}{s}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::aligned(self, other);
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let v = BigFloat::exact(BigInt::from(12), 0);
        assert_eq!(v.mantissa(), &BigInt::from(3));
        assert_eq!(v.exponent(), 2);
        assert_eq!(BigFloat::exact(BigInt::zero(), 7), BigFloat::zero());
    }

    #[test]
    fn directed_thirds() {
        let lo = BigFloat::from_rational(&frac(1, 3), 10, Rounding::Down);
        let hi = BigFloat::from_rational(&frac(1, 3), 10, Rounding::Up);
        assert!(lo.to_rational() < frac(1, 3));
        assert!(hi.to_rational() > frac(1, 3));
        assert_eq!(hi.to_rational() - lo.to_rational(), frac(1, 2048));
        let nlo = BigFloat::from_rational(&frac(-1, 3), 10, Rounding::Down);
        assert_eq!(nlo, hi.neg());
    }

    #[test]
    fn exact_values_are_not_rounded() {
        let v = BigFloat::from_rational(&frac(3, 8), 4, Rounding::Up);
        assert_eq!(v.to_rational(), frac(3, 8));
    }

    #[test]
    fn nearest_ties_to_even() {
        // 0b1011 to 3 bits: 5.5 * 2 -> 12 (even), 0b1001 -> 4.5 * 2 -> 8
        assert_eq!(BigFloat::round(BigInt::from(11), 0, 3, Rounding::Nearest).to_rational(), int(12));
        assert_eq!(BigFloat::round(BigInt::from(9), 0, 3, Rounding::Nearest).to_rational(), int(8));
        assert_eq!(BigFloat::round(BigInt::from(-11), 0, 3, Rounding::Nearest).to_rational(), int(-12));
    }

    #[test]
    fn far_apart_addition_keeps_direction() {
        let big = BigFloat::from_int(1);
        let tiny = BigFloat::exact(BigInt::one(), -10_000);
        let up = big.add(&tiny, 53, Rounding::Up);
        let down = big.add(&tiny, 53, Rounding::Down);
        assert_eq!(down, big);
        assert!(up > big);
        let down = big.sub(&tiny, 53, Rounding::Down);
        assert!(down < big);
        assert_eq!(big.sub(&tiny, 53, Rounding::Up), big);
    }

    #[test]
    fn decimal_rendering() {
        let v = BigFloat::from_rational(&frac(2, 3), 64, Rounding::Nearest);
        assert_eq!(v.to_decimal(5, Rounding::Down), "0.66666");
        assert_eq!(v.to_decimal(5, Rounding::Up), "0.66667");
        assert_eq!(BigFloat::from_int(-1234).to_decimal(2, Rounding::Down), "-1300");
        assert_eq!(BigFloat::from_int(999).to_decimal(2, Rounding::Up), "1000");
        let small = BigFloat::from_rational(&frac(1, 10_000_000_000), 64, Rounding::Down);
        assert_eq!(small.to_decimal(3, Rounding::Down), "9.99e-11");
        assert_eq!(small.to_decimal(3, Rounding::Up), "1.00e-10");
        assert_eq!(BigFloat::from_int(5).to_decimal(1, Rounding::Down), "5");
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn directed_operations_bracket_exact(a in rational(), b in rational(), prec in 8u32..80) {
            let fa = BigFloat::from_rational(&a, 200, Rounding::Nearest);
            let fb = BigFloat::from_rational(&b, 200, Rounding::Nearest);
            let (ea, eb) = (fa.to_rational(), fb.to_rational());
            for (exact, lo, hi) in [
                (&ea + &eb, fa.add(&fb, prec, Rounding::Down), fa.add(&fb, prec, Rounding::Up)),
                (&ea - &eb, fa.sub(&fb, prec, Rounding::Down), fa.sub(&fb, prec, Rounding::Up)),
                (&ea * &eb, fa.mul(&fb, prec, Rounding::Down), fa.mul(&fb, prec, Rounding::Up)),
            ] {
                prop_assert!(lo.to_rational() <= exact && exact <= hi.to_rational());
                prop_assert!(lo.precision() <= prec as u64 && hi.precision() <= prec as u64);
            }
            if !eb.is_zero() {
                let exact = &ea / &eb;
                let lo = fa.div(&fb, prec, Rounding::Down);
                let hi = fa.div(&fb, prec, Rounding::Up);
                prop_assert!(lo.to_rational() <= exact && exact <= hi.to_rational());
                // adjacent representable values
                let ulp = hi.sub(&lo, 400, Rounding::Up);
                if !ulp.is_zero() {
                    let rel = ulp.to_rational().abs() / exact.abs();
                    prop_assert!(rel <= Rational::new(BigInt::one(), BigInt::one() << (prec - 2)));
                }
            }
        }

        #[test]
        fn ordering_matches_rationals(a in rational(), b in rational()) {
            let fa = BigFloat::from_rational(&a, 300, Rounding::Nearest);
            let fb = BigFloat::from_rational(&b, 300, Rounding::Nearest);
            prop_assert_eq!(fa.cmp(&fb), fa.to_rational().cmp(&fb.to_rational()));
        }
    }
}
