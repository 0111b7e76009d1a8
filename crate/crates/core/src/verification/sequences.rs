//! Range checks on the derived sequences: monotonicity, two-sided sharp
//! bounds, the remainder brackets and the error-table ratios.

use num_traits::One;

use super::{
    aggregate, classify, decided, error_outcome, interval_text, require_n_max, Check, Outcome,
    Status, Suite, VerificationReport, Witness,
};
use crate::approximations::{
    asymptotic_error_ratio, eval_formula, map_with_harmonic, sequence_value,
    sequence_value_until, sharp_constant, triangular, ErrorSign, FormulaId, ReciprocalForm,
    SequenceId,
};
use crate::error::{Error, Result};
use crate::exact::{frac, int, Rational};
use crate::precision::{agrees_with_printed, Enclosure, PrecisionConfig};

type Bounds = (Option<Rational>, Option<Rational>);

fn range(n_max: u64) -> Vec<u64> {
    (1..=n_max).collect()
}

/// Each `which(n)` refined until it is decided against `bounds(n)`, with its
/// outcome and, when evaluation succeeded, the enclosure.
fn bounded_values(
    which: SequenceId,
    ns: &[u64],
    cfg: &PrecisionConfig,
    bounds: impl Fn(u64) -> Bounds + Sync,
) -> Result<Vec<(Outcome, Option<Enclosure>)>> {
    map_with_harmonic(ns, |n, h| {
        let (lo, hi) = bounds(n);
        let input = format!("{which}, n = {n}");
        match sequence_value_until(which, n, h, cfg, |e| decided(e, lo.as_ref(), hi.as_ref())) {
            Ok(p) => {
                let s = classify(&p.value, lo.as_ref(), hi.as_ref());
                let w = (s != Status::Proved).then(|| {
                    Witness::new(input, p.value.to_string(), interval_text(lo.as_ref(), hi.as_ref()))
                });
                ((s, w), Some(p.value))
            }
            Err(e) => (error_outcome(input, &e), None),
        }
    })
}

fn bound_check(
    label: String,
    which: SequenceId,
    ns: &[u64],
    cfg: &PrecisionConfig,
    bounds: impl Fn(u64) -> Bounds + Sync,
) -> Result<Check> {
    let outcomes = bounded_values(which, ns, cfg, bounds)?;
    Ok(aggregate(label, outcomes.into_iter().map(|(o, _)| o).collect()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Increasing,
    Decreasing,
}

fn direction(which: SequenceId) -> Result<Direction> {
    match which {
        SequenceId::F => Ok(Direction::Decreasing),
        SequenceId::Lambda | SequenceId::LambdaL2 | SequenceId::D => Ok(Direction::Increasing),
        other => Err(Error::Domain(format!(
            "monotonicity is only checked for f, lambda and d, not {other}"
        ))),
    }
}

/// Orders `a` (at `n`) against `b` (at `n + 1`), or `None` while they overlap.
fn order(a: &Enclosure, b: &Enclosure, dir: Direction) -> Option<Status> {
    let (first, second) = match dir {
        Direction::Increasing => (a, b),
        Direction::Decreasing => (b, a),
    };
    if first.strictly_below(second) {
        Some(Status::Proved)
    } else if second.hi() <= first.lo() {
        Some(Status::Refuted)
    } else {
        None
    }
}

fn compare_adjacent(
    which: SequenceId,
    n: u64,
    a: &Enclosure,
    b: &Enclosure,
    dir: Direction,
    cfg: &PrecisionConfig,
) -> Result<Outcome> {
    let mut pair = (a.clone(), b.clone());
    let mut c = *cfg;
    for _ in 0..=cfg.max_refinements {
        if let Some(s) = order(&pair.0, &pair.1, dir) {
            let w = (s != Status::Proved).then(|| witness_pair(which, n, &pair));
            return Ok((s, w));
        }
        c = c.doubled();
        pair = (
            sequence_value(which, n, &c)?.value,
            sequence_value(which, n + 1, &c)?.value,
        );
    }
    Ok((Status::Undetermined, Some(witness_pair(which, n, &pair))))
}

fn witness_pair(which: SequenceId, n: u64, pair: &(Enclosure, Enclosure)) -> Witness {
    Witness::new(
        format!("{which}, n = {n} and n = {}", n + 1),
        format!("{} then {}", pair.0, pair.1),
        "strictly separated enclosures",
    )
}

const LAMBDA_TABLE: [&str; 28] = [
    "1.1215093", "1.1683646", "1.1831718", "1.1896217", "1.1929804", "1.1949431", "1.1961868",
    "1.1970233", "1.1976125", "1.1980429", "1.1983668", "1.1986165", "1.1988131", "1.1989707",
    "1.1990988", "1.1992045", "1.1992926", "1.1993668", "1.1994300", "1.1994842", "1.1995310",
    "1.1995717", "1.1996073", "1.1996387", "1.1996664", "1.1996911", "1.1997131", "1.1997329",
];

const D_TABLE: [&str; 4] = ["3.73929752", "4.08925414", "4.13081174", "4.15288035"];

/// Compares the leading values with a published decimal table. Agreement
/// is a proved check; any mismatch is a finding, not a failure.
fn table_agreement(
    which: SequenceId,
    values: &[Enclosure],
    table: &[&str],
    cfg: &PrecisionConfig,
    report: &mut VerificationReport,
) -> Result<()> {
    let shown = table.len().min(values.len());
    if shown == 0 {
        return Ok(());
    }
    let mut mismatched = Vec::new();
    for (i, printed) in table.iter().take(shown).enumerate() {
        if !agrees_with_printed(&values[i], printed)? {
            mismatched.push(i);
        }
    }
    if mismatched.is_empty() {
        report.push(Check::proved(format!(
            "{which}_1..{which}_{shown} agree with the published decimals to the last printed digit"
        )));
        return Ok(());
    }
    for i in mismatched {
        let n = i as u64 + 1;
        let mut text = format!(
            "{which}_{n} = {} does not round to the published {}",
            values[i], table[i]
        );
        let next = sequence_value(which, n + 1, cfg)?.value;
        if (next.to_f64() - table[i].parse::<f64>().unwrap_or(f64::NAN)).abs() < 1e-6 {
            text.push_str(&format!("; it is within 1e-6 of {which}_{} = {next}", n + 1));
        }
        report.finding(text);
    }
    Ok(())
}

/// Strict monotonicity of `f` (decreasing), `lambda` and `d` (increasing)
/// over `1..=n_max`, from certified comparisons of adjacent enclosures.
/// `lambda` and `d` are also compared with their published decimal tables.
pub fn verify_monotone(
    which: SequenceId,
    n_max: u64,
    cfg: &PrecisionConfig,
) -> Result<VerificationReport> {
    require_n_max(n_max)?;
    let dir = direction(which)?;
    let ns = range(n_max);
    let values: Vec<Enclosure> = map_with_harmonic(&ns, |n, h| {
        sequence_value_until(which, n, h, cfg, |e| e.meets_width_target_at(cfg.bits, 8))
            .map(|p| p.value)
    })?
    .into_iter()
    .collect::<Result<_>>()?;

    let outcomes: Vec<Outcome> = values
        .windows(2)
        .zip(&ns)
        .map(|(w, &n)| compare_adjacent(which, n, &w[0], &w[1], dir, cfg))
        .collect::<Result<_>>()?;
    let word = match dir {
        Direction::Increasing => "increasing",
        Direction::Decreasing => "decreasing",
    };
    let mut report = VerificationReport::new(Suite::Monotone);
    report.push(aggregate(
        format!("{which}_n strictly {word} for n = 1..{n_max}"),
        outcomes,
    ));
    match which {
        SequenceId::Lambda | SequenceId::LambdaL2 => {
            table_agreement(which, &values, &LAMBDA_TABLE, cfg, &mut report)?
        }
        SequenceId::D => table_agreement(which, &values, &D_TABLE, cfg, &mut report)?,
        _ => {}
    }
    Ok(report)
}

struct SharpSpec {
    which: SequenceId,
    limit: Rational,
    /// The limit is an upper bound (else a lower bound).
    limit_above: bool,
    printed: &'static str,
}

fn sharp_specs() -> [SharpSpec; 3] {
    [
        SharpSpec {
            which: SequenceId::F,
            limit: frac(1, 3),
            limit_above: false,
            printed: "0.3652721",
        },
        SharpSpec {
            which: SequenceId::Lambda,
            limit: frac(6, 5),
            limit_above: true,
            printed: "1.12150934",
        },
        SharpSpec {
            which: SequenceId::D,
            limit: frac(21, 5),
            limit_above: true,
            printed: "3.73929752",
        },
    ]
}

/// The constant side compared against an enclosure `k` of the constant:
/// proved when `value` is strictly on the far side of all of `k`.
fn against_constant(value: &Enclosure, k: &Enclosure, limit_above: bool) -> Status {
    let (klo, khi) = (k.lo().to_rational(), k.hi().to_rational());
    // The constant is a lower bound when the limit is an upper bound.
    let (lo, hi) = if limit_above { (Some(&khi), None) } else { (None, Some(&klo)) };
    match classify(value, lo, hi) {
        Status::Refuted => {
            let certain = if limit_above {
                value.hi().to_rational() <= klo
            } else {
                value.lo().to_rational() >= khi
            };
            if certain {
                Status::Refuted
            } else {
                Status::Undetermined
            }
        }
        s => s,
    }
}

/// The three two-sided bounds `1/3 < f_n <= f_1`, `lambda_1 <= lambda_n < 6/5`
/// and `d_1 <= d_n < 21/5`. The limit sides are checked strictly for every
/// `n`; the `n = 1` sides are equalities, checked by comparing the closed
/// forms of `f_1`, `lambda_1`, `d_1` with the constants structurally, and
/// strict for `n >= 2`.
pub fn verify_sharp_theorems(n_max: u64, cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_n_max(n_max)?;
    let ns = range(n_max);
    let mut report = VerificationReport::new(Suite::Sharp);
    for spec in sharp_specs() {
        let which = spec.which;
        let limit = spec.limit.clone();
        let bounds = |_: u64| -> Bounds {
            if spec.limit_above {
                (None, Some(limit.clone()))
            } else {
                (Some(limit.clone()), None)
            }
        };
        let values = bounded_values(which, &ns, cfg, bounds)?;
        let rel = if spec.limit_above { "<" } else { ">" };
        report.push(aggregate(
            format!("{which}_n {rel} {} for n = 1..{n_max}", spec.limit),
            values.iter().map(|(o, _)| o.clone()).collect(),
        ));

        let constant = sharp_constant(which).expect("sharp constant exists");
        let form = ReciprocalForm::of_sequence(which, 1)?.expect("reciprocal shape");
        let status = if form == constant { Status::Proved } else { Status::Refuted };
        report.push(Check::with_witness(
            format!("{which}_1 equals {constant} (symbolic)"),
            status,
            Witness::new("n = 1", form.to_string(), constant.to_string()),
        ));

        let k = constant.enclose(cfg)?;
        let outcomes: Vec<Outcome> = values
            .iter()
            .zip(&ns)
            .skip(1)
            .map(|((_, v), &n)| match v {
                None => error_outcome(format!("{which}, n = {n}"), &Error::Domain("no enclosure".into())),
                Some(v) => {
                    let s = against_constant(v, &k, spec.limit_above);
                    let w = (s != Status::Proved).then(|| {
                        Witness::new(
                            format!("{which}, n = {n}"),
                            v.to_string(),
                            format!("strictly {} {which}_1 = {k}", if spec.limit_above { "above" } else { "below" }),
                        )
                    });
                    (s, w)
                }
            })
            .collect();
        let rel = if spec.limit_above { ">" } else { "<" };
        report.push(aggregate(
            format!("{which}_n {rel} {which}_1 for n = 2..{n_max}"),
            outcomes,
        ));

        let digits = agrees_with_printed(&k, spec.printed)?;
        let narrow = k.width_at_most_pow2(-34);
        let label = format!("{constant} rounds to {} with width below 1e-10", spec.printed);
        let w = Witness::new(
            format!("{} bits", cfg.bits),
            k.to_string(),
            format!("within half a unit of {}", spec.printed),
        );
        let status = if digits && narrow { Status::Proved } else { Status::Refuted };
        report.push(Check::with_witness(label, status, w));
    }
    report.finding(
        "the d bound is sometimes written d_1 < d_n <= 21/5; since d_n increases from d_1 \
         towards 21/5, equality holds at n = 1 on the d_1 side and 21/5 is never attained",
    );
    Ok(report)
}

/// `(formula, n, published over/under label)` for the four tabulated formulas.
fn error_rows() -> [(FormulaId, u64, ErrorSign); 4] {
    [
        (FormulaId::Euler1, 10_000, ErrorSign::Over),
        (FormulaId::TothMare2, 10_000, ErrorSign::Under),
        (FormulaId::RamanujanLodge3, 1_000, ErrorSign::Over),
        (FormulaId::DeTempleWang4, 1_000, ErrorSign::Over),
    ]
}

/// `|error| / predicted` for the four tabulated formulas, strictly inside
/// `(0.98, 1.02)`. Measured signs that differ from the published
/// over/under labels are reported as findings.
pub fn verify_error_table(cfg: &PrecisionConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Suite::Sharp);
    let (lo, hi) = (frac(49, 50), frac(51, 50));
    for (id, n, label_sign) in error_rows() {
        let ratio = asymptotic_error_ratio(id, n, cfg)?;
        let s = classify(&ratio, Some(&lo), Some(&hi));
        let label = format!("{id}: |error| / predicted in (0.98, 1.02) at n = {n}");
        let w = Witness::new(format!("n = {n}"), ratio.to_string(), interval_text(Some(&lo), Some(&hi)));
        report.push(Check::with_witness(label, s, w));
        let measured: Vec<ErrorSign> = [1, n]
            .into_iter()
            .map(|k| eval_formula(id, k, cfg).map(|r| r.sign))
            .collect::<Result<_>>()?;
        if measured.iter().any(|&m| m != label_sign) {
            report.finding(format!(
                "{id} is labelled '{label_sign}' but measures '{}' at n = 1 and '{}' at n = {n}",
                measured[0], measured[1]
            ));
        }
    }
    Ok(report)
}

/// `0 < Theta_r(n) < 1` for `r = 1..=r_max` and `n = 1..=min(100, n_max)`,
/// plus `n = n_max` when it is larger.
pub fn verify_theta(n_max: u64, r_max: u32, cfg: &PrecisionConfig) -> Result<VerificationReport> {
    if n_max == 0 || r_max == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "n_max and r_max must be at least 1",
        });
    }
    let mut ns: Vec<u64> = (1..=n_max.min(100)).collect();
    if n_max > 100 {
        ns.push(n_max);
    }
    let (zero, one) = (int(0), Rational::one());
    let grid: Vec<Vec<Outcome>> = map_with_harmonic(&ns, |n, h| {
        (1..=r_max)
            .map(|r| {
                let which = SequenceId::Theta(r);
                let input = format!("n = {n}, r = {r}");
                match sequence_value_until(which, n, h, cfg, |e| decided(e, Some(&zero), Some(&one))) {
                    Ok(p) => {
                        let s = classify(&p.value, Some(&zero), Some(&one));
                        let w = (s != Status::Proved)
                            .then(|| Witness::new(input, p.value.to_string(), "in open interval (0, 1)"));
                        (s, w)
                    }
                    Err(e) => error_outcome(input, &e),
                }
            })
            .collect()
    })?;
    let span = if n_max > 100 {
        format!("n = 1..100 and n = {n_max}")
    } else {
        format!("n = 1..{n_max}")
    };
    let mut report = VerificationReport::new(Suite::Theta);
    for r in 1..=r_max {
        let column = grid.iter().map(|row| row[(r - 1) as usize].clone()).collect();
        report.push(aggregate(format!("0 < Theta_{r}(n) < 1 for {span}"), column));
    }
    Ok(report)
}

/// `0 < c_n < 1` for `n = 1..=n_max`.
pub fn verify_cesaro(n_max: u64, cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_n_max(n_max)?;
    let mut report = VerificationReport::new(Suite::Cesaro);
    report.push(bound_check(
        format!("0 < c_n < 1 for n = 1..{n_max}"),
        SequenceId::C,
        &range(n_max),
        cfg,
        |_| (Some(int(0)), Some(int(1))),
    )?);
    Ok(report)
}

fn residual_bound(n: u64) -> Rational {
    let m = triangular(n);
    frac(19, 25200) / (&m * &m * &m)
}

fn rho_bound(n: u64) -> Rational {
    let m = triangular(n);
    frac(43, 84000) / (&m * &m * &m * &m)
}

fn delta_bound(_: u64) -> Rational {
    frac(187969, 4042500)
}

fn delta_cap_bound(n: u64) -> Rational {
    frac(38, 175) / (int(n as i64) * int(n as i64 + 1))
}

fn sample_ns(n_max: u64) -> Vec<u64> {
    let mut ns: Vec<u64> = [10, 100, 1000, 10_000]
        .into_iter()
        .filter(|&n| n <= n_max)
        .collect();
    if n_max >= 10 && !ns.contains(&n_max) {
        ns.push(n_max);
    }
    ns
}

/// The Lodge-type bounds for `n = 1..=n_max`:
/// `0 < residual < 19/(25200 m^3)`, `0 < rho_n < 43/(84000 m^4)`,
/// `0 < delta_n < 187969/4042500` and `0 < 6/5 - lambda_n < 38/(175 n(n+1))`.
/// Each constant is shown to be approached (sampled), and the leading term
/// of `21/5 - d_n` is checked.
pub fn verify_lodge(n_max: u64, cfg: &PrecisionConfig) -> Result<VerificationReport> {
    require_n_max(n_max)?;
    let ns = range(n_max);
    let mut report = VerificationReport::new(Suite::Lodge);
    type BoundFn = fn(u64) -> Rational;
    let rows: [(SequenceId, &str, BoundFn); 4] = [
        (SequenceId::LodgeResidual, "19/(25200 m^3)", residual_bound),
        (SequenceId::Rho, "43/(84000 m^4)", rho_bound),
        (SequenceId::Delta, "187969/4042500", delta_bound),
        (SequenceId::DeltaCap, "38/(175 n(n+1))", delta_cap_bound),
    ];
    for (which, text, bound) in rows {
        report.push(bound_check(
            format!("0 < {which}_n < {text} for n = 1..{n_max}"),
            which,
            &ns,
            cfg,
            |n| (Some(int(0)), Some(bound(n))),
        )?);
    }

    // A bound is best possible when value / bound tends to 1: require
    // 1 - 3/m < ratio < 1 at the sample points.
    let samples = sample_ns(n_max);
    if !samples.is_empty() {
        for (which, text, bound) in rows {
            let outcomes = bounded_values(which, &samples, cfg, |n| {
                let b = bound(n);
                let m = triangular(n);
                (Some(&b * (int(1) - int(3) / m)), Some(b))
            })?;
            let list: Vec<String> = samples.iter().map(u64::to_string).collect();
            report.push(aggregate(
                format!(
                    "{which}_n / ({text}) lies in (1 - 3/m, 1) at n = {}",
                    list.join(", ")
                ),
                outcomes.into_iter().map(|(o, _)| o).collect(),
            ));
        }
        d_leading_term(&samples, cfg, &mut report)?;
    }
    Ok(report)
}

/// `21/5 - d_n ~ 2071 / (1400 (n+1/2)^2)`: the scaled ratio lies in
/// `(1 - 1/n, 1)`. A first-order form `1400 / (2071 (n+1/2))` is also
/// measured and reported if it does not fit.
fn d_leading_term(samples: &[u64], cfg: &PrecisionConfig, report: &mut VerificationReport) -> Result<()> {
    let limit = frac(21, 5);
    let outcomes = bounded_values(SequenceId::D, samples, cfg, |n| {
        let big_n = int(n as i64) + frac(1, 2);
        let lead = frac(2071, 1400) / (&big_n * &big_n);
        // d_n = 21/5 - lead * ratio, so ratio in (1 - 1/n, 1) is
        // d_n in (21/5 - lead, 21/5 - lead (1 - 1/n)).
        let lo = &limit - &lead;
        let hi = &limit - &lead * (int(1) - frac(1, n as i64));
        (Some(lo), Some(hi))
    })?;
    let list: Vec<String> = samples.iter().map(u64::to_string).collect();
    report.push(aggregate(
        format!(
            "(21/5 - d_n)(n+1/2)^2 1400/2071 lies in (1 - 1/n, 1) at n = {}",
            list.join(", ")
        ),
        outcomes.iter().map(|(o, _)| o.clone()).collect(),
    ));

    let (&n, (_, Some(d))) = (samples.last().expect("non-empty"), outcomes.last().expect("non-empty")) else {
        return Ok(());
    };
    let big_n = int(n as i64) + frac(1, 2);
    let first_order = d.neg().add_rational(&limit).mul_rational(&(big_n * frac(2071, 1400)));
    let (lo, hi) = (frac(99, 100), frac(101, 100));
    if classify(&first_order, Some(&lo), Some(&hi)) != Status::Proved {
        report.finding(format!(
            "21/5 - d_n is not ~ 1400/(2071 (n+1/2)): (21/5 - d_n)(n+1/2) 2071/1400 = {first_order} \
             at n = {n}; the leading term is 2071/(1400 (n+1/2)^2)"
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn lambda_table_reproduced() {
        let r = verify_monotone(SequenceId::Lambda, 28, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 2);
        assert!(r.findings.is_empty(), "{:?}", r.findings);
    }

    #[test]
    fn d_table_mismatch_is_a_finding() {
        let r = verify_monotone(SequenceId::D, 6, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.findings.len(), 3, "{:?}", r.findings);
        assert!(r.findings[0].contains("within 1e-6 of d_3"), "{}", r.findings[0]);
    }

    #[test]
    fn f_decreasing() {
        let r = verify_monotone(SequenceId::F, 300, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn monotone_rejects_other_sequences() {
        assert!(verify_monotone(SequenceId::C, 10, &cfg()).is_err());
        assert!(verify_monotone(SequenceId::F, 1, &cfg()).is_err());
    }

    #[test]
    fn adjacent_order_detects_wrong_direction() {
        let a = Enclosure::hull_of(&int(1), &frac(11, 10), 64);
        let b = Enclosure::hull_of(&int(2), &frac(21, 10), 64);
        assert_eq!(order(&a, &b, Direction::Increasing), Some(Status::Proved));
        assert_eq!(order(&a, &b, Direction::Decreasing), Some(Status::Refuted));
        assert_eq!(order(&a, &a, Direction::Increasing), None);
    }

    #[test]
    fn sharp_theorems_small_range() {
        let r = verify_sharp_theorems(50, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 12);
        let eq = &r.checks[1];
        assert!(eq.label().contains("symbolic"));
        assert_eq!(eq.witness().unwrap().computed, "1/(1 - gamma) - 2");
    }

    #[test]
    fn constant_side_is_strict() {
        let k = Enclosure::hull_of(&frac(1, 2), &frac(3, 5), 64);
        let v = Enclosure::hull_of(&frac(11, 20), &frac(7, 10), 64);
        assert_eq!(against_constant(&v, &k, true), Status::Undetermined);
        let below = Enclosure::hull_of(&frac(1, 10), &frac(1, 5), 64);
        assert_eq!(against_constant(&below, &k, true), Status::Refuted);
        assert_eq!(against_constant(&below, &k, false), Status::Proved);
    }

    #[test]
    fn error_table_signs_reported() {
        let r = verify_error_table(&cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.findings.len(), 3, "{:?}", r.findings);
        assert!(r.findings.iter().any(|f| f.starts_with("tothmare2")));
    }

    #[test]
    fn theta_small_grid() {
        let r = verify_theta(20, 4, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn cesaro_and_lodge() {
        let r = verify_cesaro(200, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let r = verify_lodge(200, &cfg()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 9);
        assert_eq!(r.findings.len(), 1);
    }

    #[test]
    fn tightened_bound_is_refuted() {
        // Half the residual bound fails already at n = 1.
        let c = bound_check(
            "half".into(),
            SequenceId::LodgeResidual,
            &[1, 2],
            &cfg(),
            |n| (Some(int(0)), Some(residual_bound(n) / int(2))),
        )
        .unwrap();
        assert_eq!(c.status(), Status::Refuted);
        assert!(c.witness().unwrap().input.ends_with("n = 1"));
    }
}
