//! Certified checks of the inequalities, identities and tables, grouped into
//! suites. Every check is either proved (strict containment or exact
//! equality), refuted, or left undetermined; the last two carry a witness.

mod exact_checks;
mod lemmas;
mod sequences;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{frac, int, Rational};
use crate::precision::{Enclosure, PrecisionConfig};

pub use exact_checks::{
    verify_coefficient_tables, verify_identity_d, verify_identity_lambda, verify_oresme,
};
pub use lemmas::{verify_bracket_ratios, verify_lemma2, verify_lemma3};
pub use sequences::{
    verify_cesaro, verify_error_table, verify_lodge, verify_monotone, verify_sharp_theorems,
    verify_theta,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Refuted,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub computed: String,
    pub expected: String,
}

impl Witness {
    pub fn new(input: impl Into<String>, computed: impl Into<String>, expected: impl Into<String>) -> Self {
        Self {
            input: input.into(),
            computed: computed.into(),
            expected: expected.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    label: String,
    status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

impl Check {
    pub fn proved(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            status: Status::Proved,
            witness: None,
        }
    }

    /// A check of any status with a witness attached.
    pub fn with_witness(label: impl Into<String>, status: Status, witness: Witness) -> Self {
        Self {
            label: label.into(),
            status,
            witness: Some(witness),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oresme,
    Lemmas,
    Identities,
    Coefficients,
    Monotone,
    Sharp,
    Theta,
    Cesaro,
    Lodge,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oresme,
        Suite::Lemmas,
        Suite::Identities,
        Suite::Coefficients,
        Suite::Monotone,
        Suite::Sharp,
        Suite::Theta,
        Suite::Cesaro,
        Suite::Lodge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oresme => "oresme",
            Suite::Lemmas => "lemmas",
            Suite::Identities => "identities",
            Suite::Coefficients => "coefficients",
            Suite::Monotone => "monotone",
            Suite::Sharp => "sharp",
            Suite::Theta => "theta",
            Suite::Cesaro => "cesaro",
            Suite::Lodge => "lodge",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Discrepancies with printed statements that do not fail the suite.
    #[serde(default)]
    pub findings: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: Vec::new(),
            findings: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn finding(&mut self, text: impl Into<String>) {
        self.findings.push(text.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.findings.extend(other.findings);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Proved)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "suite {}: {} ({} proved, {} refuted, {} undetermined)",
            self.suite,
            verdict,
            self.count(Status::Proved),
            self.count(Status::Refuted),
            self.count(Status::Undetermined),
        );
        for c in &self.checks {
            let _ = writeln!(out, "  [{:<12}] {}", c.status, c.label);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "      input:    {}", w.input);
                let _ = writeln!(out, "      computed: {}", w.computed);
                let _ = writeln!(out, "      expected: {}", w.expected);
            }
        }
        for f in &self.findings {
            let _ = writeln!(out, "  finding: {f}");
        }
        out
    }
}

/// Inputs shared by the suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub cfg: PrecisionConfig,
    /// Upper end of every `n` range.
    pub n_max: u64,
    /// Largest `k` in the `H_{2^k}` check.
    pub k_max: u32,
    /// Sample points for the real-variable lemmas.
    pub samples: Vec<Rational>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            cfg: PrecisionConfig::default(),
            n_max: 1000,
            k_max: 20,
            samples: default_samples(),
        }
    }
}

/// Straddles the thresholds `x > 4` and `x > 28` used in the monotonicity
/// arguments.
pub fn default_samples() -> Vec<Rational> {
    vec![
        frac(1, 2),
        int(1),
        int(2),
        int(5),
        int(10),
        int(28),
        int(29),
        int(100),
        int(1000),
    ]
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationReport> {
    let cfg = &opts.cfg;
    let n = opts.n_max;
    let mut report = VerificationReport::new(suite);
    let parts: Vec<VerificationReport> = match suite {
        Suite::Oresme => vec![verify_oresme(opts.k_max)?],
        Suite::Lemmas => vec![
            verify_lemma2(&opts.samples, cfg)?,
            verify_lemma3(&opts.samples, cfg)?,
            verify_bracket_ratios(&opts.samples, cfg)?,
        ],
        Suite::Identities => vec![verify_identity_lambda(), verify_identity_d()],
        Suite::Coefficients => vec![verify_coefficient_tables()?],
        Suite::Monotone => {
            use crate::approximations::SequenceId::{Lambda, D, F};
            [F, Lambda, D]
                .into_iter()
                .map(|which| verify_monotone(which, n, cfg))
                .collect::<Result<_>>()?
        }
        Suite::Sharp => vec![verify_sharp_theorems(n, cfg)?, verify_error_table(cfg)?],
        Suite::Theta => vec![verify_theta(n, 10, cfg)?],
        Suite::Cesaro => vec![verify_cesaro(n, cfg)?],
        Suite::Lodge => vec![verify_lodge(n, cfg)?],
    };
    for p in parts {
        report.extend(p);
    }
    Ok(report)
}

/// Runs several suites concurrently; reports come back in request order.
pub fn run_suites(suites: &[Suite], opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    suites.par_iter().map(|&s| run_suite(s, opts)).collect()
}

// ---- shared helpers ----

/// Where an enclosure sits relative to the open interval `(lo, hi)`.
/// Proved only on strict containment; refuted only when the whole enclosure
/// lies on the wrong side of an endpoint (touching counts as outside, since
/// the claims are strict).
pub(crate) fn classify(e: &Enclosure, lo: Option<&Rational>, hi: Option<&Rational>) -> Status {
    let elo = e.lo().to_rational();
    let ehi = e.hi().to_rational();
    let above = lo.is_none_or(|l| elo > *l);
    let below = hi.is_none_or(|h| ehi < *h);
    if above && below {
        return Status::Proved;
    }
    let fails_lo = lo.is_some_and(|l| ehi <= *l);
    let fails_hi = hi.is_some_and(|h| elo >= *h);
    if fails_lo || fails_hi {
        Status::Refuted
    } else {
        Status::Undetermined
    }
}

pub(crate) fn decided(e: &Enclosure, lo: Option<&Rational>, hi: Option<&Rational>) -> bool {
    classify(e, lo, hi) != Status::Undetermined
}

pub(crate) fn interval_text(lo: Option<&Rational>, hi: Option<&Rational>) -> String {
    let l = lo.map_or("-inf".to_string(), |q| q.to_string());
    let h = hi.map_or("+inf".to_string(), |q| q.to_string());
    format!("in open interval ({l}, {h})")
}

/// One per-input outcome, with a witness only when it is needed.
pub(crate) type Outcome = (Status, Option<Witness>);

/// Collapses per-input outcomes into one check: the first refutation wins,
/// then the first undetermined input.
pub(crate) fn aggregate(label: String, outcomes: Vec<Outcome>) -> Check {
    let pick = |want: Status| {
        outcomes
            .iter()
            .find(|(s, _)| *s == want)
            .map(|(s, w)| (*s, w.clone()))
    };
    match pick(Status::Refuted).or_else(|| pick(Status::Undetermined)) {
        Some((status, Some(w))) => Check::with_witness(label, status, w),
        Some((status, None)) => Check::with_witness(
            label,
            status,
            Witness::new("unknown", "no witness recorded", "a decided outcome"),
        ),
        None => Check::proved(label),
    }
}

pub(crate) fn error_outcome(input: String, err: &Error) -> Outcome {
    (
        Status::Undetermined,
        Some(Witness::new(input, format!("evaluation failed: {err}"), "a certified enclosure")),
    )
}

/// Positive rational check used by the sample-based suites.
pub(crate) fn require_positive(samples: &[Rational]) -> Result<()> {
    match samples.iter().find(|x| !x.is_positive()) {
        Some(x) => Err(Error::Domain(format!("sample points must be positive, got {x}"))),
        None => Ok(()),
    }
}

pub(crate) fn require_n_max(n_max: u64) -> Result<()> {
    if n_max < 2 {
        Err(Error::InvalidIndex {
            index: n_max,
            reason: "n_max must be at least 2",
        })
    } else {
        Ok(())
    }
}
