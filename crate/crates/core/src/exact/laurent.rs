use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{DensePolynomial, Rational};
use crate::error::{Error, Result};

/// Finite sum `sum_e c_e x^e` with integer (possibly negative) exponents.
///
/// Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(coeff: Rational, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds `sum c / x^e` from `(c, e)` pairs, the shape in which the
    /// inequality bounds are usually written down.
    pub fn from_inverse_powers<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, i32)>,
    {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(-e, c);
        }
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * factor)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                super::pow(x, e as u32)
            } else {
                super::pow(&x.recip(), e.unsigned_abs())
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// The same polynomial as a [`DensePolynomial`], if no exponent is
    /// negative.
    pub fn to_dense(&self) -> Option<DensePolynomial> {
        match self.min_exponent() {
            None => Some(DensePolynomial::zero()),
            Some(e) if e < 0 => None,
            Some(_) => {
                let top = self.max_exponent().unwrap_or(0) as usize;
                let mut coeffs = vec![Rational::zero(); top + 1];
                for (&e, c) in &self.terms {
                    coeffs[e as usize] = c.clone();
                }
                Some(DensePolynomial::new(coeffs))
            }
        }
    }
}

impl From<&DensePolynomial> for LaurentPolynomial {
    fn from(p: &DensePolynomial) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i32, c.clone())),
        )
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if e == 0 || !mag.is_one() {
                write!(f, "({mag})")?;
            }
            if e != 0 {
                write!(f, "x^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};
    use proptest::prelude::*;

    fn inv(c: Rational, e: i32) -> LaurentPolynomial {
        LaurentPolynomial::monomial(c, -e)
    }

    #[test]
    fn examples() {
        let x_inv = inv(int(1), 1);
        assert_eq!(&x_inv * &x_inv, inv(int(1), 2));

        let a = inv(frac(1, 3), 2);
        assert!((&a - &a).is_zero());

        let p = &inv(frac(1, 3), 2) - &inv(frac(1, 3), 3);
        let sq = &p * &p;
        let expected = LaurentPolynomial::from_inverse_powers([
            (frac(1, 9), 4),
            (frac(-2, 9), 5),
            (frac(1, 9), 6),
        ]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn eval_and_dense_conversion() {
        let p = LaurentPolynomial::from_terms([(2, int(1)), (-1, int(2))]);
        assert_eq!(p.eval(&int(2)).unwrap(), int(5));
        assert!(p.eval(&int(0)).is_err());
        assert!(p.to_dense().is_none());
        let d = p.shift(1).to_dense().unwrap();
        assert_eq!(d, DensePolynomial::from_integers(&[2, 0, 0, 1]));
    }

    fn small_laurent() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((-6i32..6, -9i64..9, 1i64..5), 0..5).prop_map(|terms| {
            LaurentPolynomial::from_terms(terms.into_iter().map(|(e, n, d)| (e, frac(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_laurent(), b in small_laurent(), c in small_laurent()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if let (Some(ea), Some(eb)) = (a.min_exponent(), b.min_exponent()) {
                prop_assert_eq!((&a * &b).min_exponent(), Some(ea + eb));
            }
        }
    }
}
