//! Every quantity in this module has the shape
//!
//! `offset + scale * r`  or  `offset + scale / r`,
//!
//! where `r = H_n + exact - gamma - log_coeff * ln(log_arg)`. `H_n` is kept
//! apart from the small rational `exact` so it is converted to binary once
//! without a full-size gcd.

use num_traits::{One, Zero};

use crate::coefficients::{detemple_wang_coefficient, ramanujan_coefficient};
use crate::error::Result;
use crate::exact::{frac, int, pow, Rational};
use crate::precision::{gamma_at, ln_at, Enclosure};

use super::{FormulaId, SequenceId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LogResidual {
    pub exact: Rational,
    pub log_coeff: Rational,
    pub log_arg: Rational,
}

impl LogResidual {
    fn new(exact: Rational, log_coeff: Rational, log_arg: Rational) -> Self {
        if log_arg.is_one() {
            Self {
                exact,
                log_coeff: Rational::zero(),
                log_arg,
            }
        } else {
            Self {
                exact,
                log_coeff,
                log_arg,
            }
        }
    }

    pub fn enclose(&self, harmonic: &Rational, bits: u32) -> Result<Enclosure> {
        let w = bits + 16;
        let mut r = Enclosure::from_rational(harmonic, w)
            .add(&Enclosure::from_rational(&self.exact, w))
            .sub(&gamma_at(bits)?);
        if !self.log_coeff.is_zero() {
            r = r.sub(&ln_at(&self.log_arg, bits)?.mul_rational(&self.log_coeff));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Shape {
    Linear { scale: Rational, offset: Rational },
    Reciprocal { scale: Rational, offset: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Expr {
    pub residual: LogResidual,
    pub shape: Shape,
    /// Bits lost to cancellation, in multiples of `log2 m`.
    pub order: u32,
}

impl Expr {
    pub fn enclose(&self, harmonic: &Rational, bits: u32) -> Result<Enclosure> {
        let r = self.residual.enclose(harmonic, bits)?;
        Ok(match &self.shape {
            Shape::Linear { scale, offset } => r.mul_rational(scale).add_rational(offset),
            Shape::Reciprocal { scale, offset } => {
                r.recip()?.mul_rational(scale).add_rational(offset)
            }
        })
    }
}

pub(crate) fn triangular(n: u64) -> Rational {
    int(n as i64) * int(n as i64 + 1) / int(2)
}

fn half_shift(n: u64) -> Rational {
    int(n as i64) + frac(1, 2)
}

/// `(log_coeff, log_arg, correction)` with the formula value
/// `gamma + log_coeff * ln(log_arg) + correction`.
pub(crate) fn formula_parts(id: FormulaId, n: u64) -> Result<(Rational, Rational, Rational)> {
    let nq = int(n as i64);
    let m = triangular(n);
    let two_m = int(2) * &m;
    let big_n = half_shift(n);
    let one = Rational::one();
    let half = frac(1, 2);
    Ok(match id {
        FormulaId::Euler1 => (one, nq.clone(), (int(2) * &nq).recip()),
        FormulaId::TothMare2 => (one, nq.clone(), (int(2) * &nq + frac(1, 3)).recip()),
        FormulaId::RamanujanLodge3 => (half, two_m.clone(), (int(6) * &two_m + frac(6, 5)).recip()),
        FormulaId::DeTempleWang4 => (
            one,
            big_n.clone(),
            (int(24) * &big_n * &big_n + frac(21, 5)).recip(),
        ),
        FormulaId::Cesaro => (half, two_m, (int(12) * &m).recip()),
        FormulaId::LodgeL1 => (half, two_m, (int(12) * &m + frac(6, 5)).recip()),
        FormulaId::RamanujanSeries(r) => (half, two_m, ramanujan_partial_sum(&m, r)?),
        FormulaId::DWSeries(r) => {
            let n2 = &big_n * &big_n;
            let mut sum = Rational::zero();
            let mut p_pow = Rational::one();
            for p in 1..=r {
                p_pow *= &n2;
                sum += detemple_wang_coefficient(p)? / &p_pow;
            }
            (one, big_n, sum)
        }
    })
}

pub(crate) fn ramanujan_partial_sum(m: &Rational, r: u32) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut m_pow = Rational::one();
    for p in 1..=r {
        m_pow *= m;
        sum += ramanujan_coefficient(p)? / &m_pow;
    }
    Ok(sum)
}

/// `approx - H_n` as `-(H_n - correction - gamma - log)`.
pub(crate) fn formula_error_expr(id: FormulaId, n: u64) -> Result<Expr> {
    let (log_coeff, log_arg, corr) = formula_parts(id, n)?;
    Ok(Expr {
        residual: LogResidual::new(-corr, log_coeff, log_arg),
        shape: Shape::Linear {
            scale: -Rational::one(),
            offset: Rational::zero(),
        },
        order: formula_order(id),
    })
}

pub(crate) fn formula_order(id: FormulaId) -> u32 {
    match id {
        FormulaId::Euler1 | FormulaId::Cesaro => 1,
        FormulaId::TothMare2 => 2,
        FormulaId::RamanujanLodge3 | FormulaId::DeTempleWang4 | FormulaId::LodgeL1 => 3,
        FormulaId::RamanujanSeries(r) | FormulaId::DWSeries(r) => r + 1,
    }
}

pub(crate) fn sequence_expr(which: SequenceId, n: u64) -> Result<Expr> {
    let nq = int(n as i64);
    let m = triangular(n);
    let two_m = int(2) * &m;
    let big_n = half_shift(n);
    let one = Rational::one();
    let half = frac(1, 2);
    let zero = Rational::zero;
    let recip = |offset: Rational| Shape::Reciprocal {
        scale: Rational::one(),
        offset,
    };
    let lodge_corr = (int(12) * &m + frac(6, 5)).recip();
    let m3 = pow(&m, 3);
    let (residual, shape, order) = match which {
        SequenceId::F => (
            LogResidual::new(zero(), one, nq.clone()),
            recip(-int(2) * &nq),
            2,
        ),
        SequenceId::Lambda => (
            LogResidual::new(zero(), half, two_m.clone()),
            recip(-int(6) * &two_m),
            3,
        ),
        SequenceId::D => (
            LogResidual::new(zero(), one, big_n.clone()),
            recip(-int(24) * &big_n * &big_n),
            3,
        ),
        SequenceId::C => (
            LogResidual::new(zero(), half, two_m),
            Shape::Linear {
                scale: int(12) * &m,
                offset: zero(),
            },
            2,
        ),
        SequenceId::LodgeResidual => (
            LogResidual::new(-lodge_corr, half, two_m),
            Shape::Linear {
                scale: one,
                offset: zero(),
            },
            4,
        ),
        SequenceId::Rho => (
            LogResidual::new(-lodge_corr - frac(19, 25200) / &m3, half, two_m),
            Shape::Linear {
                scale: -one,
                offset: zero(),
            },
            5,
        ),
        SequenceId::LambdaL2 => (
            LogResidual::new(zero(), half, two_m),
            recip(-int(12) * &m),
            2,
        ),
        SequenceId::Delta => {
            let k = frac(6, 5) - frac(19, 175) / &m + frac(13, 250) / (&m * &m) + int(12) * &m;
            (
                LogResidual::new(zero(), half, two_m),
                Shape::Reciprocal {
                    scale: -m3.clone(),
                    offset: k * &m3,
                },
                6,
            )
        }
        SequenceId::DeltaCap => (
            LogResidual::new(zero(), half, two_m.clone()),
            Shape::Reciprocal {
                scale: -one,
                offset: frac(6, 5) + int(6) * &two_m,
            },
            4,
        ),
        SequenceId::Theta(r) => {
            let partial = ramanujan_partial_sum(&m, r)?;
            let next = ramanujan_coefficient(r + 1)?;
            (
                LogResidual::new(-partial, half, two_m),
                Shape::Linear {
                    scale: pow(&m, r + 1) / next,
                    offset: zero(),
                },
                r + 2,
            )
        }
    };
    Ok(Expr {
        residual,
        shape,
        order,
    })
}
