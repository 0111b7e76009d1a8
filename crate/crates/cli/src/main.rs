mod config;
mod range;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use harmonic_core::approximations::{eval_range, sequence_range, FormulaId, SequenceId};
use harmonic_core::coefficients::{CoefficientSeries, Family};
use harmonic_core::precision::PrecisionConfig;
use harmonic_core::verification::{run_suites, Suite, SuiteOptions};

use config::{FileConfig, Format};
use range::NRange;
use render::{SequenceRow, TableRow};

#[derive(Parser, Debug)]
#[command(
    name = "harmonic",
    version,
    about = "Exact coefficients, certified approximations and verification suites for harmonic numbers"
)]
struct Cli {
    /// Working precision in bits (at least 32).
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// How many times the precision may be doubled to settle a result.
    #[arg(long = "max-refine", global = true)]
    max_refine: Option<u32>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Flat key = value file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest n for the range-based verification suites.
    #[arg(long = "n-max", global = true)]
    n_max: Option<u64>,

    /// Add the limit and the distance to it (sequences only).
    #[arg(long, global = true)]
    limit: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Series {
    Ramanujan,
    Dw,
    Euler,
}

impl From<Series> for Family {
    fn from(s: Series) -> Self {
        match s {
            Series::Ramanujan => Family::Ramanujan,
            Series::Dw => Family::DeTempleWang,
            Series::Euler => Family::Euler,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact expansion coefficients.
    Coeffs {
        #[arg(value_enum)]
        series: Series,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        count: u32,
    },
    /// Approximate formulas against the exact H_n.
    Table {
        /// Range of n as a:b:step.
        #[arg(long = "n")]
        n: NRange,
        /// Formula names (euler1, tothmare2, ramanujanlodge3, detemplewang4,
        /// cesaro, lodgel1, ramanujan:r, dw:r) or "all" for the first four.
        #[arg(required = true)]
        formulas: Vec<String>,
    },
    /// Run verification suites; exit status 0 only if every check is proved.
    Verify {
        /// Suite names or "all".
        #[arg(required = true)]
        suites: Vec<String>,
    },
    /// Values of a derived sequence (f, lambda, LambdaL2, d, c, lodgeResidual,
    /// rho, delta, DeltaCap, theta:r).
    Sequences {
        which: SequenceId,
        #[arg(long = "n")]
        n: NRange,
    },
}

struct Settings {
    cfg: PrecisionConfig,
    format: Format,
    out: Option<PathBuf>,
    n_max: u64,
    limit: bool,
}

/// A problem with how the program was invoked (exit status 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn settings(cli: &Cli) -> anyhow::Result<Settings> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p).map_err(|e| usage(format!("{e:#}")))?,
        None => FileConfig::default(),
    };
    let defaults = PrecisionConfig::default();
    let bits = cli.precision.or(file.precision).unwrap_or(defaults.bits);
    let refine = cli.max_refine.or(file.max_refine).unwrap_or(defaults.max_refinements);
    let cfg = PrecisionConfig::new(bits, refine).map_err(|e| usage(e.to_string()))?;
    Ok(Settings {
        cfg,
        format: cli.format.or(file.format).unwrap_or(Format::Md),
        out: cli.out.clone().or(file.out),
        n_max: cli.n_max.or(file.n_max).unwrap_or(1000),
        limit: cli.limit || file.limit.unwrap_or(false),
    })
}

fn emit(settings: &Settings, text: &str) -> anyhow::Result<()> {
    match &settings.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn parse_formulas(names: &[String]) -> anyhow::Result<Vec<FormulaId>> {
    let mut ids = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            ids.extend(FormulaId::TABLE);
        } else {
            ids.push(name.parse().map_err(|e: harmonic_core::error::Error| usage(e.to_string()))?);
        }
    }
    Ok(ids)
}

fn parse_suites(names: &[String]) -> anyhow::Result<Vec<Suite>> {
    let mut suites = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse().map_err(|e: harmonic_core::error::Error| usage(e.to_string()))?);
        }
    }
    suites.dedup();
    Ok(suites)
}

/// Runs the command; `Ok(false)` means a verification did not prove.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let s = settings(&cli)?;
    match &cli.command {
        Command::Coeffs { series, count } => {
            let series = CoefficientSeries::generate((*series).into(), *count)?;
            emit(&s, &render::coefficients(&series, s.format))?;
        }
        Command::Table { n, formulas } => {
            let ids = parse_formulas(formulas)?;
            let reports = eval_range(&ids, &n.values(), &s.cfg)?;
            let rows: Vec<TableRow> = reports
                .into_iter()
                .map(|report| {
                    let ratio = report
                        .formula
                        .predicted_error(report.n)
                        .map(|p| report.error.abs().mul_rational(&p.recip()));
                    TableRow { report, ratio }
                })
                .collect();
            emit(&s, &render::table(&rows, s.format))?;
        }
        Command::Verify { suites } => {
            let suites = parse_suites(suites)?;
            let opts = SuiteOptions {
                cfg: s.cfg,
                n_max: s.n_max,
                ..SuiteOptions::default()
            };
            let reports = run_suites(&suites, &opts)?;
            emit(&s, &render::reports(&reports, s.format)?)?;
            return Ok(reports.iter().all(|r| r.passed()));
        }
        Command::Sequences { which, n } => {
            let points = sequence_range(*which, &n.values(), &s.cfg)?;
            let rows: Vec<SequenceRow> = points
                .into_iter()
                .map(|point| {
                    let limit = if s.limit {
                        which.limit().map(|l| {
                            let d = point.value.neg().add_rational(&l);
                            (l, d)
                        })
                    } else {
                        None
                    };
                    SequenceRow { point, limit }
                })
                .collect();
            emit(&s, &render::sequences(&rows, s.limit, s.format))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
