use std::fmt::Write as _;

use harmonic_core::approximations::{
    EvalReport, SequencePoint, EVAL_CSV_HEADER, SEQUENCE_CSV_HEADER,
};
use harmonic_core::coefficients::CoefficientSeries;
use harmonic_core::exact::{to_canonical, Rational};
use harmonic_core::precision::{Enclosure, Rounding};
use harmonic_core::verification::VerificationReport;
use serde::Serialize;

use crate::config::Format;

/// Digits shown per endpoint in markdown tables; CSV and JSON carry all
/// certified digits.
const MD_DIGITS: u32 = 15;

fn short(e: &Enclosure) -> String {
    let d = e.display_digits().min(MD_DIGITS);
    format!(
        "[{}, {}]",
        e.lo().to_decimal(d, Rounding::Down),
        e.hi().to_decimal(d, Rounding::Up)
    )
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn md_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", headers.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(headers.len()));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| cell(c)).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

pub fn coefficients(series: &CoefficientSeries, format: Format) -> String {
    let records = series.records();
    match format {
        Format::Csv => {
            let mut out = String::from("index,value\n");
            for r in &records {
                let _ = writeln!(out, "{},{}", r.p, r.value);
            }
            out
        }
        Format::Json => json(&records),
        Format::Md => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| vec![r.p.to_string(), r.value.clone()])
                .collect();
            md_table(&["index", "value"], &rows)
        }
    }
}

pub struct TableRow {
    pub report: EvalReport,
    /// `|error|` over the tabulated leading term, where one exists.
    pub ratio: Option<Enclosure>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    #[serde(flatten)]
    report: &'a EvalReport,
    ratio: Option<&'a Enclosure>,
}

pub fn table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("{EVAL_CSV_HEADER},ratio_lo,ratio_hi\n");
            for r in rows {
                let (lo, hi) = r
                    .ratio
                    .as_ref()
                    .map_or((String::new(), String::new()), |e| (e.lo_decimal(), e.hi_decimal()));
                let _ = writeln!(out, "{},{lo},{hi}", r.report.csv_row());
            }
            out
        }
        Format::Json => {
            let items: Vec<TableJson> = rows
                .iter()
                .map(|r| TableJson {
                    report: &r.report,
                    ratio: r.ratio.as_ref(),
                })
                .collect();
            json(&items)
        }
        Format::Md => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let h = Enclosure::from_rational(&r.report.truth, 64);
                    vec![
                        r.report.n.to_string(),
                        r.report.formula.to_string(),
                        short(&h),
                        short(&r.report.approx),
                        short(&r.report.error),
                        r.report.sign.to_string(),
                        r.ratio.as_ref().map_or("-".into(), short),
                    ]
                })
                .collect();
            md_table(
                &["n", "formula", "H_n", "approx", "error", "sign", "|error| / predicted"],
                &body,
            )
        }
    }
}

pub struct SequenceRow {
    pub point: SequencePoint,
    /// Limit and `limit - value`, when requested and known.
    pub limit: Option<(Rational, Enclosure)>,
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    #[serde(flatten)]
    point: &'a SequencePoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    limit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<&'a Enclosure>,
}

pub fn sequences(rows: &[SequenceRow], with_limit: bool, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(SEQUENCE_CSV_HEADER);
            if with_limit {
                out.push_str(",limit,distance_lo,distance_hi");
            }
            out.push('\n');
            for r in rows {
                out.push_str(&r.point.csv_row());
                if with_limit {
                    match &r.limit {
                        Some((l, d)) => {
                            let _ = write!(out, ",{},{},{}", to_canonical(l), d.lo_decimal(), d.hi_decimal());
                        }
                        None => out.push_str(",,,"),
                    }
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let items: Vec<SequenceJson> = rows
                .iter()
                .map(|r| SequenceJson {
                    point: &r.point,
                    limit: r.limit.as_ref().map(|(l, _)| to_canonical(l)),
                    distance: r.limit.as_ref().map(|(_, d)| d),
                })
                .collect();
            json(&items)
        }
        Format::Md => {
            let mut headers = vec!["n", "sequence", "value"];
            if with_limit {
                headers.extend(["limit", "limit - value"]);
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.point.n.to_string(),
                        r.point.which.to_string(),
                        short(&r.point.value),
                    ];
                    if with_limit {
                        match &r.limit {
                            Some((l, d)) => row.extend([l.to_string(), short(d)]),
                            None => row.extend(["-".to_string(), "-".to_string()]),
                        }
                    }
                    row
                })
                .collect();
            md_table(&headers, &body)
        }
    }
}

pub fn reports(reports: &[VerificationReport], format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => json(reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "label", "status", "input", "computed", "expected"])?;
            for r in reports {
                let suite = r.suite.to_string();
                for c in &r.checks {
                    let status = c.status().to_string();
                    let (i, comp, exp) = c.witness().map_or(("", "", ""), |w| {
                        (w.input.as_str(), w.computed.as_str(), w.expected.as_str())
                    });
                    w.write_record([suite.as_str(), c.label(), status.as_str(), i, comp, exp])?;
                }
                for f in &r.findings {
                    w.write_record([suite.as_str(), f.as_str(), "finding", "", "", ""])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Md => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "## {}: {verdict}\n", r.suite);
                let rows: Vec<Vec<String>> = r
                    .checks
                    .iter()
                    .map(|c| {
                        let w = c.witness().map_or(String::new(), |w| {
                            format!("{}: got {}, expected {}", w.input, w.computed, w.expected)
                        });
                        vec![c.status().to_string(), c.label().to_string(), w]
                    })
                    .collect();
                out.push_str(&md_table(&["status", "check", "witness"], &rows));
                if !r.findings.is_empty() {
                    out.push_str("\nFindings:\n\n");
                    for f in &r.findings {
                        let _ = writeln!(out, "- {f}");
                    }
                }
                out.push('\n');
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use harmonic_core::coefficients::Family;
    use harmonic_core::exact::frac;

    #[test]
    fn md_cells_escape_pipes() {
        let t = md_table(&["a"], &[vec!["|x|".into()]]);
        assert!(t.contains("\\|x\\|"));
    }

    #[test]
    fn coefficient_csv_uses_fractions() {
        let s = CoefficientSeries::generate(Family::DeTempleWang, 1).unwrap();
        assert_eq!(coefficients(&s, Format::Csv), "index,value\n1,1/24\n");
    }

    #[test]
    fn short_caps_digits() {
        let e = Enclosure::from_rational(&frac(1, 3), 256);
        let s = short(&e);
        assert!(s.len() < 50, "{s}");
        assert!(s.starts_with("[0.333"));
    }
}
