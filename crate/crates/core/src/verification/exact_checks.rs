//! Checks that need no floating point at all.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::lemmas::{psi_half_bounds, psi_pair_bounds, trigamma_half_bounds, trigamma_pair_bounds};
use super::{Check, Status, Suite, VerificationReport, Witness};
use crate::coefficients::{
    detemple_wang_coefficient, euler_term, published_ramanujan, ramanujan_coefficient,
    ramanujan_coefficient_umbral, ramanujan_from_dw_transform, CoefficientSeries, Family,
};
use crate::error::{Error, Result};
use crate::exact::{
    frac, harmonic_exact, harmonic_unreduced, int, DensePolynomial, LaurentPolynomial, Rational,
};
use crate::precision::Enclosure;

/// Above this `k`, `H_{2^k}` is compared as an unreduced fraction.
const REDUCE_UP_TO: u32 = 12;

fn oresme_check(k: u32) -> Result<Check> {
    let n = 1u64 << k;
    let bound = frac(k as i64 + 1, 2);
    let label = format!("H_{n} > {bound} (k = {k})");
    let (holds, value) = if k <= REDUCE_UP_TO {
        let h = harmonic_exact(n)?;
        let shown = if k <= 3 { h.to_string() } else { Enclosure::from_rational(&h, 64).to_string() };
        (h > bound, shown)
    } else {
        let (num, den) = harmonic_unreduced(n)?;
        let holds = &num * BigInt::from(2) > &den * BigInt::from(k + 1);
        (holds, Enclosure::from_ratio(&num, &den, 64).to_string())
    };
    let w = Witness::new(format!("k = {k}"), value, format!("> {bound}"));
    Ok(if holds {
        if k <= 3 {
            Check::with_witness(label, Status::Proved, w)
        } else {
            Check::proved(label)
        }
    } else {
        Check::with_witness(label, Status::Refuted, w)
    })
}

/// `H_{2^k} > (k+1)/2` exactly for `k = 2..=k_max`.
pub fn verify_oresme(k_max: u32) -> Result<VerificationReport> {
    if !(2..=40).contains(&k_max) {
        return Err(Error::InvalidIndex {
            index: k_max as u64,
            reason: "k_max must lie in 2..=40",
        });
    }
    let checks: Vec<Check> = (2..=k_max)
        .into_par_iter()
        .map(oresme_check)
        .collect::<Result<_>>()?;
    Ok(VerificationReport {
        suite: Suite::Oresme,
        checks,
        findings: Vec::new(),
    })
}

/// Compares ascending integer coefficients; on mismatch the witness names the
/// first differing power.
fn compare_coeffs(label: &str, got: &DensePolynomial, want: &[i64]) -> Check {
    let want = DensePolynomial::from_integers(want);
    if *got == want {
        return Check::with_witness(
            label,
            Status::Proved,
            Witness::new("coefficients", got.to_string(), want.to_string()),
        );
    }
    let top = got.coeffs().len().max(want.coeffs().len());
    let k = (0..top)
        .find(|&k| got.coeff(k) != want.coeff(k))
        .unwrap_or(0);
    Check::with_witness(
        label,
        Status::Refuted,
        Witness::new(
            format!("coefficient of x^{k}"),
            got.coeff(k).to_string(),
            want.coeff(k).to_string(),
        ),
    )
}

fn compare_value(label: &str, input: &str, got: &Rational, want: &Rational) -> Check {
    let status = if got == want { Status::Proved } else { Status::Refuted };
    Check::with_witness(label, status, Witness::new(input, got.to_string(), want.to_string()))
}

fn not_polynomial(label: &str, p: &LaurentPolynomial) -> Check {
    Check::with_witness(
        label,
        Status::Refuted,
        Witness::new("cleared expression", p.to_string(), "a polynomial"),
    )
}

const LAMBDA_QUINTIC: [i64; 6] = [-2500, 1300, 231, -3654, -21693, 798];
const LAMBDA_QUOTIENT: [i64; 5] = [11433784, 408303, 14574, 651, 798];
const LAMBDA_REMAINDER: i64 = 320143452;

fn lambda_difference(quartic: Rational) -> LaurentPolynomial {
    let (a, _) = trigamma_pair_bounds(quartic);
    let (_, b) = psi_pair_bounds();
    let six_x_three = LaurentPolynomial::from_terms([(1, int(6)), (0, int(3))]);
    &a - &(&six_x_three * &(&b * &b))
}

/// `A(x) - (6x+3) B(x)^2`, with `A` the lower trigamma-pair bound and `B` the
/// upper digamma-pair bound, equals `quintic / (33075 x^12)`; dividing the
/// quintic by `x - 28` gives the known quotient and remainder.
pub fn verify_identity_lambda() -> VerificationReport {
    let mut report = VerificationReport::new(Suite::Identities);
    let cleared = lambda_difference(int(-1)).shift(12).scale(&int(33075));
    let label = "33075 x^12 (A - (6x+3) B^2) equals 798x^5 - 21693x^4 - 3654x^3 + 231x^2 + 1300x - 2500";
    let Some(quintic) = cleared.to_dense() else {
        report.push(not_polynomial(label, &cleared));
        return report;
    };
    report.push(compare_coeffs(label, &quintic, &LAMBDA_QUINTIC));

    let expected = DensePolynomial::from_integers(&LAMBDA_QUINTIC);
    let (q, r) = expected.divmod_linear(&int(28));
    report.push(compare_coeffs(
        "quintic / (x - 28) has quotient 798x^4 + 651x^3 + 14574x^2 + 408303x + 11433784",
        &q,
        &LAMBDA_QUOTIENT,
    ));
    report.push(compare_value(
        "quintic / (x - 28) leaves remainder 320143452",
        "x = 28",
        &r,
        &int(LAMBDA_REMAINDER),
    ));
    report.push(compare_value(
        "quintic at x = 28 equals the remainder",
        "x = 28",
        &expected.eval(&int(28)),
        &int(LAMBDA_REMAINDER),
    ));

    let printed = lambda_difference(frac(-1, 4)).shift(12).scale(&int(33075));
    let gap = &printed - &cleared;
    if !gap.is_zero() {
        report.finding(format!(
            "with -1/(4x^4) in the trigamma-pair bound the cleared difference changes by {gap}; \
             the quintic only follows from the -1/x^4 form"
        ));
    }
    report
}

const D_NUMERATOR: [i64; 11] = [
    -9018009, -31747716, -14007876, 59313792, 11454272, -129239296, 119566592, 65630208,
    -701008896, -534417408, 178139136,
];
const D_QUOTIENT: [i64; 10] = [
    548963242092,
    137248747452,
    34315688832,
    8564093760,
    2138159872,
    566849792,
    111820800,
    11547648,
    178139136,
    178139136,
];
const D_REMAINDER: i64 = 2195843950359;
const D_SCALE: i64 = 17340825600;

/// `[C(x) - 48(x+1/2) D(x)^2] x^16 (1+2x) * 17340825600` is the known
/// degree-10 polynomial, where `C` is the lower bound on `1/(x+1/2) - psi'(x+1)`
/// and `D` the upper bound on `psi(x+1) - ln(x+1/2)`. The `1/(x+1/2)` term of
/// `C` becomes the constant 2 once multiplied by `1+2x`, so the whole
/// computation stays in Laurent polynomials. Synthetic division by `x - 4`
/// then gives the known quotient and remainder.
pub fn verify_identity_d() -> VerificationReport {
    let mut report = VerificationReport::new(Suite::Identities);
    let (c_rest, _) = trigamma_half_bounds();
    let (_, d) = psi_half_bounds();
    let one_two_x = LaurentPolynomial::from_terms([(0, int(1)), (1, int(2))]);
    let bracket = &(&LaurentPolynomial::constant(int(2)) + &(&one_two_x * &c_rest))
        - &(&(&one_two_x * &one_two_x) * &(&d * &d)).scale(&int(24));
    let cleared = bracket.shift(16).scale(&int(D_SCALE));
    let label = "17340825600 x^16 (1+2x) (C - 48(x+1/2) D^2) equals the degree-10 numerator";
    let Some(numerator) = cleared.to_dense() else {
        report.push(not_polynomial(label, &cleared));
        return report;
    };
    report.push(compare_coeffs(label, &numerator, &D_NUMERATOR));

    let expected = DensePolynomial::from_integers(&D_NUMERATOR);
    let (q, r) = expected.divmod_linear(&int(4));
    report.push(compare_coeffs("numerator / (x - 4) has the known quotient p(x)", &q, &D_QUOTIENT));
    report.push(compare_value(
        "numerator / (x - 4) leaves remainder 2195843950359",
        "x = 4",
        &r,
        &int(D_REMAINDER),
    ));
    report
}

/// Exact coefficient tables: the nine classical `R_p`, the agreement of the
/// three independent `R_p` formulas, the first `D_p` and Euler terms.
pub fn verify_coefficient_tables() -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::Coefficients);
    for p in 1..=9 {
        let got = ramanujan_coefficient(p)?;
        let want = published_ramanujan(p).expect("nine published values");
        report.push(compare_value(&format!("R_{p} equals the classical value"), &format!("p = {p}"), &got, &want));
    }

    let outcomes: Vec<(u32, [Rational; 3])> = (1..=20u32)
        .into_par_iter()
        .map(|p| {
            Ok((
                p,
                [
                    ramanujan_coefficient(p)?,
                    ramanujan_coefficient_umbral(p)?,
                    ramanujan_from_dw_transform(p)?,
                ],
            ))
        })
        .collect::<Result<_>>()?;
    let label = "closed, umbral and DeTempleWang-transform forms of R_p agree for p = 1..20";
    match outcomes.iter().find(|(_, v)| v[0] != v[1] || v[0] != v[2]) {
        None => report.push(Check::proved(label)),
        Some((p, v)) => report.push(Check::with_witness(
            label,
            Status::Refuted,
            Witness::new(
                format!("p = {p}"),
                format!("umbral {}, transform {}", v[1], v[2]),
                v[0].to_string(),
            ),
        )),
    }

    let series = CoefficientSeries::generate(Family::Ramanujan, 20)?;
    let violations = series.sign_alternation_violations();
    let label = "R_p alternates in sign for p = 1..20";
    match violations.first() {
        None => report.push(Check::proved(label)),
        Some(p) => report.push(Check::with_witness(
            label,
            Status::Refuted,
            Witness::new(format!("p = {p}"), "same sign as R_{p-1}", "opposite sign"),
        )),
    }

    report.push(compare_value("D_1 = 1/24", "p = 1", &detemple_wang_coefficient(1)?, &frac(1, 24)));
    for (k, (exp, coeff)) in [(1, (1, frac(1, 2))), (2, (2, frac(-1, 12))), (3, (4, frac(1, 120)))] {
        let (e, c) = euler_term(k)?;
        let label = format!("Euler-Maclaurin term {k} is {coeff}/n^{exp}");
        let ok = e == exp && c == coeff;
        report.push(Check::with_witness(
            label,
            if ok { Status::Proved } else { Status::Refuted },
            Witness::new(format!("k = {k}"), format!("{c}/n^{e}"), format!("{coeff}/n^{exp}")),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oresme_small_cases_carry_exact_values() {
        let r = verify_oresme(3).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks[0].witness().unwrap().computed, "25/12");
        assert_eq!(r.checks[1].witness().unwrap().computed, "761/280");
        assert!(verify_oresme(1).is_err());
    }

    #[test]
    fn oresme_crosses_the_reduction_cutoff() {
        let r = verify_oresme(14).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 13);
    }

    #[test]
    fn lambda_identity_replays() {
        let r = verify_identity_lambda();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.findings.len(), 1);
    }

    #[test]
    fn lambda_difference_matches_pointwise_evaluation() {
        // Oracle: evaluate the bounds as plain rationals and combine by hand.
        let x = frac(7, 3);
        let (a, _) = trigamma_pair_bounds(int(-1));
        let (_, b) = psi_pair_bounds();
        let (a, b) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        let direct = a - (int(6) * &x + int(3)) * &b * &b;
        let x12 = crate::exact::pow(&x, 12);
        let quintic = DensePolynomial::from_integers(&LAMBDA_QUINTIC).eval(&x);
        assert_eq!(direct, quintic / (int(33075) * x12));
    }

    #[test]
    fn d_identity_replays() {
        let r = verify_identity_d();
        assert!(r.passed(), "{}", r.to_text());
        let w = r.checks[0].witness().unwrap();
        assert!(w.computed.contains("178139136"));
    }

    #[test]
    fn d_numerator_matches_pointwise_evaluation() {
        let x = int(3);
        let (c, _) = trigamma_half_bounds();
        let (_, d) = psi_half_bounds();
        let c = (&x + frac(1, 2)).recip() + c.eval(&x).unwrap();
        let d = d.eval(&x).unwrap();
        let lhs = (c - int(48) * (&x + frac(1, 2)) * &d * &d)
            * crate::exact::pow(&x, 16)
            * (int(1) + int(2) * &x)
            * int(D_SCALE);
        assert_eq!(lhs, DensePolynomial::from_integers(&D_NUMERATOR).eval(&x));
    }

    #[test]
    fn coefficient_tables_prove() {
        let r = verify_coefficient_tables().unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let p8 = &r.checks[7];
        assert_eq!(p8.witness().unwrap().computed, "-2833/1166880");
    }

    #[test]
    fn coefficient_mismatch_names_the_power() {
        let got = DensePolynomial::from_integers(&[1, 2, 3]);
        let c = compare_coeffs("t", &got, &[1, 5, 3]);
        assert_eq!(c.status(), Status::Refuted);
        assert_eq!(c.witness().unwrap().input, "coefficient of x^1");
    }
}
