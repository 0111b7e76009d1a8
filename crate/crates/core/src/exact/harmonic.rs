use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// `H_n = 1 + 1/2 + ... + 1/n`, exactly.
///
/// The sum is split recursively so that both halves have numerators and
/// denominators of similar size, and reduced once at the end.
pub fn harmonic_exact(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("H_0 is an empty sum; n must be at least 1".into()));
    }
    let (num, den) = harmonic_unreduced(n)?;
    Ok(Rational::new(num, den))
}

/// `H_n` as an unreduced fraction `(num, den)` with `den = n!`.
///
/// Skips the final gcd, which dominates for large `n`; enough for exact
/// comparisons by cross-multiplication.
pub fn harmonic_unreduced(n: u64) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::Domain("H_0 is an empty sum; n must be at least 1".into()));
    }
    Ok(split_sum(1, n + 1))
}

// sum_{k=a}^{b-1} 1/k as an unreduced fraction
fn split_sum(a: u64, b: u64) -> (BigInt, BigInt) {
    if b - a == 1 {
        return (BigInt::one(), BigInt::from(a));
    }
    if b - a <= 16 {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for k in a..b {
            num = num * k + &den;
            den *= k;
        }
        return (num, den);
    }
    let mid = a + (b - a) / 2;
    let (p1, q1) = split_sum(a, mid);
    let (p2, q2) = split_sum(mid, b);
    (&p1 * &q2 + &p2 * &q1, q1 * q2)
}

/// Consecutive harmonic numbers `H_start, H_{start+1}, ...`.
///
/// Each step adds `1/n` and removes common factors, which can only be
/// divisors of `n`, so no full-size gcd is ever taken.
#[derive(Debug, Clone)]
pub struct HarmonicSequence {
    next: u64,
    num: BigInt,
    den: BigInt,
}

impl HarmonicSequence {
    pub fn starting_at(n: u64) -> Result<Self> {
        let h = harmonic_exact(n)?;
        let (num, den) = h.into();
        Ok(Self { next: n, num, den })
    }
}

impl Iterator for HarmonicSequence {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        let item = (n, Rational::new_raw(self.num.clone(), self.den.clone()));
        let k = n + 1;
        self.num = &self.num * k + &self.den;
        self.den *= k;
        loop {
            let r = (&self.num % k).to_u64().unwrap_or(0);
            let g = r.gcd(&k);
            let g = g.gcd(&(&self.den % g).to_u64().unwrap_or(0));
            if g <= 1 {
                break;
            }
            self.num /= g;
            self.den /= g;
        }
        self.next = k;
        Some(item)
    }
}
