//! Exact coefficients of the asymptotic expansions of `H_n`.
//!
//! * Ramanujan: `H_n ~ ln(2m)/2 + γ + sum_p R_p / m^p` with `m = n(n+1)/2`.
//! * DeTemple–Wang: `H_n ~ ln(n + 1/2) + γ + sum_p D_p / (n + 1/2)^{2p}`.
//! * Euler: `H_n ~ ln n + γ + 1/(2n) - sum_j B_{2j} / (2j n^{2j})`.
//!
//! `R_p` is available by three independent routes (the Bernoulli closed form,
//! the umbral expansion, and re-expansion of the DeTemple–Wang series in
//! powers of `1/m`), which the tests hold equal.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_number, bernoulli_poly_at_half, binomial, int, sign_pow, to_canonical,
    DensePolynomial, Rational,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ramanujan,
    #[serde(rename = "dw")]
    DeTempleWang,
    Euler,
}

type Cache = Mutex<HashMap<u32, Rational>>;

fn cache(family: Family) -> &'static Cache {
    static RAMANUJAN: OnceLock<Cache> = OnceLock::new();
    static DW: OnceLock<Cache> = OnceLock::new();
    let cell = match family {
        Family::Ramanujan => &RAMANUJAN,
        Family::DeTempleWang => &DW,
        Family::Euler => unreachable!("Euler terms are read straight from the Bernoulli table"),
    };
    cell.get_or_init(Default::default)
}

fn cached(family: Family, p: u32, compute: impl FnOnce() -> Rational) -> Rational {
    if let Some(v) = cache(family).lock().unwrap_or_else(|e| e.into_inner()).get(&p) {
        return v.clone();
    }
    let value = compute();
    cache(family)
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(p, value.clone());
    value
}

fn positive(p: u32) -> Result<()> {
    if p == 0 {
        Err(Error::InvalidIndex {
            index: 0,
            reason: "coefficient indices start at 1",
        })
    } else {
        Ok(())
    }
}

fn b_half(two_k: u32) -> Rational {
    bernoulli_poly_at_half(two_k).expect("even index")
}

// 1 / (2p * 8^p)
fn log_weight(p: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * p) * (BigInt::one() << (3 * p)))
}

/// `R_p = (-1)^{p-1}/(2p 8^p) * (1 + sum_{k=1}^{p} C(p,k) (-4)^k B_{2k}(1/2))`.
pub fn ramanujan_coefficient(p: u32) -> Result<Rational> {
    positive(p)?;
    Ok(cached(Family::Ramanujan, p, || {
        let mut sum = Rational::one();
        for k in 1..=p {
            let weight = binomial(p as u64, k as u64) * BigInt::from(-4).pow(k);
            sum += Rational::from_integer(weight) * b_half(2 * k);
        }
        sign_pow(p as u64 - 1) * log_weight(p) * sum
    }))
}

/// `R_p = -1/(2p) * ((4B^2 - 1)/8)^p`, expanded as a polynomial in `B^2` and
/// read back with `B^{2j} -> B_{2j}(1/2)`.
pub fn ramanujan_coefficient_umbral(p: u32) -> Result<Rational> {
    positive(p)?;
    let base = DensePolynomial::from_integers(&[-1, 4]).pow(p);
    let umbral: Rational = base
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * b_half(2 * j as u32))
        .sum();
    Ok(-log_weight(p) * umbral)
}

/// `D_p = -B_{2p}(1/2) / (2p)`.
pub fn detemple_wang_coefficient(p: u32) -> Result<Rational> {
    positive(p)?;
    Ok(cached(Family::DeTempleWang, p, || {
        -b_half(2 * p) / int(2 * p as i64)
    }))
}

/// `R_p` rebuilt from the DeTemple–Wang coefficients.
///
/// With `(n + 1/2)^2 = 2m (1 + 1/(8m))`, each `D_s / (n+1/2)^{2s}` expands
/// binomially in `1/m`, and `ln(n + 1/2) = ln(2m)/2 + ln(1 + 1/(8m))/2`
/// contributes `(-1)^{p-1}/(2p 8^p)`. Collecting the `1/m^p` terms:
///
/// `R_p = (-1)^{p-1}/(2p 8^p) + sum_{s=1}^{p} D_s/2^s (-1)^{p-s} C(p-1, p-s) / 8^{p-s}`.
pub fn ramanujan_from_dw_transform(p: u32) -> Result<Rational> {
    positive(p)?;
    let mut r = sign_pow(p as u64 - 1) * log_weight(p);
    for s in 1..=p {
        let k = p - s;
        let scale = Rational::new(
            binomial(p as u64 - 1, k as u64),
            (BigInt::one() << s) * (BigInt::one() << (3 * k)),
        );
        r += detemple_wang_coefficient(s)? * sign_pow(k as u64) * scale;
    }
    Ok(r)
}

/// The `k`-th correction term of the Euler expansion, as `(power of 1/n,
/// coefficient)`: `(1, 1/2)` for `k = 1`, then `(2j, -B_{2j}/(2j))`.
pub fn euler_term(k: u32) -> Result<(u32, Rational)> {
    positive(k)?;
    if k == 1 {
        return Ok((1, Rational::new(BigInt::one(), BigInt::from(2))));
    }
    let two_j = 2 * (k - 1);
    Ok((two_j, -bernoulli_number(two_j) / int(two_j as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientEntry {
    /// Position in the family, starting at 1.
    pub index: u32,
    /// Label under which the coefficient is published: `p` for `R_p` and
    /// `D_p`, the power of `1/n` for Euler terms.
    pub key: u32,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSeries {
    pub family: Family,
    pub entries: Vec<CoefficientEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub p: u32,
    pub value: String,
}

impl CoefficientSeries {
    pub fn generate(family: Family, count: u32) -> Result<Self> {
        let entries = (1..=count)
            .map(|index| {
                let (key, value) = match family {
                    Family::Ramanujan => (index, ramanujan_coefficient(index)?),
                    Family::DeTempleWang => (index, detemple_wang_coefficient(index)?),
                    Family::Euler => euler_term(index)?,
                };
                Ok(CoefficientEntry { index, key, value })
            })
            .collect::<Result<_>>()?;
        Ok(Self { family, entries })
    }

    /// Indices where the sign differs from `(-1)^{p-1}`.
    pub fn sign_alternation_violations(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| {
                let expect_positive = e.index % 2 == 1;
                e.value.is_zero() || e.value.is_positive() != expect_positive
            })
            .map(|e| e.index)
            .collect()
    }

    pub fn records(&self) -> Vec<CoefficientRecord> {
        self.entries
            .iter()
            .map(|e| CoefficientRecord {
                p: e.key,
                value: to_canonical(&e.value),
            })
            .collect()
    }

    /// `index,numerator,denominator` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,numerator,denominator\n");
        for e in &self.entries {
            let _ = writeln!(out, "{},{},{}", e.key, e.value.numer(), e.value.denom());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("plain records serialize")
    }
}

/// The classical published values of `R_1 .. R_9`.
pub const PUBLISHED_RAMANUJAN: [(i64, i64); 9] = [
    (1, 12),
    (-1, 120),
    (1, 630),
    (-1, 1680),
    (1, 2310),
    (-191, 360360),
    (29, 30030),
    (-2833, 1166880),
    (140051, 17459442),
];

pub fn published_ramanujan(p: u32) -> Option<Rational> {
    PUBLISHED_RAMANUJAN
        .get((p as usize).checked_sub(1)?)
        .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}
