use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial with exact rational coefficients, `coeffs[i]` multiplying `x^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DensePolynomial {
    coeffs: Vec<Rational>,
}

impl DensePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients in ascending order of exponent.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: Rational, exp: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = coeff;
        Self::new(coeffs)
    }

    /// `x - c`.
    pub fn linear_factor(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::new(vec![Rational::one()]), |acc, _| &acc * self)
    }

    /// Synthetic division by `x - c`: returns `(q, r)` with
    /// `self = q * (x - c) + r`, so `r = self(c)`.
    pub fn divmod_linear(&self, c: &Rational) -> (DensePolynomial, Rational) {
        let Some(deg) = self.degree() else {
            return (Self::zero(), Rational::zero());
        };
        let mut quotient = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for i in (0..=deg).rev() {
            carry = &carry * c + &self.coeffs[i];
            if i > 0 {
                quotient[i - 1] = carry.clone();
            }
        }
        (Self::new(quotient), carry)
    }
}

impl Add for &DensePolynomial {
    type Output = DensePolynomial;

    fn add(self, rhs: &DensePolynomial) -> DensePolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensePolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePolynomial {
    type Output = DensePolynomial;

    fn sub(self, rhs: &DensePolynomial) -> DensePolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensePolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePolynomial {
    type Output = DensePolynomial;

    fn mul(self, rhs: &DensePolynomial) -> DensePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePolynomial::new(out)
    }
}

impl Neg for &DensePolynomial {
    type Output = DensePolynomial;

    fn neg(self) -> DensePolynomial {
        DensePolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = exp == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{exp}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(DensePolynomial::zero().degree(), None);
        assert_eq!(DensePolynomial::from_integers(&[0, 0]).degree(), None);
        assert_eq!(DensePolynomial::from_integers(&[5]).degree(), Some(0));
    }

    #[test]
    fn divide_x_squared_minus_one() {
        let p = DensePolynomial::from_integers(&[-1, 0, 1]);
        let (q, r) = p.divmod_linear(&int(1));
        assert_eq!(q, DensePolynomial::from_integers(&[1, 1]));
        assert_eq!(r, int(0));
    }

    #[test]
    fn quintic_by_x_minus_28() {
        let p = DensePolynomial::from_integers(&[-2500, 1300, 231, -3654, -21693, 798]);
        let (q, r) = p.divmod_linear(&int(28));
        assert_eq!(
            q,
            DensePolynomial::from_integers(&[11433784, 408303, 14574, 651, 798])
        );
        assert_eq!(r, int(320143452));
        assert_eq!(p.eval(&int(28)), r);
    }

    #[test]
    fn display() {
        let p = DensePolynomial::from_integers(&[-1, 0, 3, -1]);
        assert_eq!(p.to_string(), "-x^3 + 3x^2 - 1");
    }

    proptest! {
        #[test]
        fn synthetic_division_reconstructs(
            coeffs in prop::collection::vec(-1000i64..1000, 1..13),
            num in -50i64..50,
            den in 1i64..20,
        ) {
            let p = DensePolynomial::from_integers(&coeffs);
            let c = crate::exact::frac(num, den);
            let (q, r) = p.divmod_linear(&c);
            let rebuilt = &(&q * &DensePolynomial::linear_factor(&c)) + &DensePolynomial::new(vec![r.clone()]);
            prop_assert_eq!(rebuilt, p.clone());
            prop_assert_eq!(r, p.eval(&c));
        }
    }
}
