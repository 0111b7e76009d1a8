//! Approximate formulas for `H_n`, their certified errors, and the derived
//! sequences that measure how sharp each formula is.

mod batch;
mod expr;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{frac, harmonic_exact, int, pow, to_canonical, Rational};
use crate::precision::{refine, Enclosure, PrecisionConfig, SignOutcome};

pub use batch::{eval_range, sequence_range, theta_grid, ThetaCell};
pub(crate) use batch::map_with_harmonic;
pub(crate) use expr::triangular;
use expr::{formula_error_expr, sequence_expr, Expr, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaId {
    Euler1,
    TothMare2,
    RamanujanLodge3,
    DeTempleWang4,
    Cesaro,
    LodgeL1,
    RamanujanSeries(u32),
    DWSeries(u32),
}

impl FormulaId {
    /// The four formulas of the classical accuracy table, in order.
    pub const TABLE: [FormulaId; 4] = [
        FormulaId::Euler1,
        FormulaId::TothMare2,
        FormulaId::RamanujanLodge3,
        FormulaId::DeTempleWang4,
    ];

    /// Predicted leading magnitude of the error, for the table formulas.
    pub fn predicted_error(self, n: u64) -> Option<Rational> {
        let nq = int(n as i64);
        let big_n = &nq + frac(1, 2);
        Some(match self {
            FormulaId::Euler1 => (int(12) * &nq * &nq).recip(),
            FormulaId::TothMare2 => (int(72) * pow(&nq, 3)).recip(),
            FormulaId::RamanujanLodge3 => {
                frac(19, 3150) / pow(&(&nq * (&nq + int(1))), 3)
            }
            FormulaId::DeTempleWang4 => frac(2071, 806400) / pow(&big_n, 6),
            _ => return None,
        })
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaId::Euler1 => write!(f, "euler1"),
            FormulaId::TothMare2 => write!(f, "tothmare2"),
            FormulaId::RamanujanLodge3 => write!(f, "ramanujanlodge3"),
            FormulaId::DeTempleWang4 => write!(f, "detemplewang4"),
            FormulaId::Cesaro => write!(f, "cesaro"),
            FormulaId::LodgeL1 => write!(f, "lodgel1"),
            FormulaId::RamanujanSeries(r) => write!(f, "ramanujan:{r}"),
            FormulaId::DWSeries(r) => write!(f, "dw:{r}"),
        }
    }
}

/// Splits `name:r` or `name(r)` into the name and a positive order.
fn split_order(s: &str) -> Result<(String, Option<u32>)> {
    let s = s.trim().to_ascii_lowercase();
    let (name, arg) = if let Some((a, b)) = s.split_once(':') {
        (a.to_string(), Some(b.to_string()))
    } else if let Some(open) = s.find('(') {
        let inner = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
        (s[..open].to_string(), Some(inner.to_string()))
    } else {
        (s, None)
    };
    let order = match arg {
        None => None,
        Some(a) => {
            let r: u32 = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order {a:?}")))?;
            if r == 0 {
                return Err(Error::InvalidIndex {
                    index: 0,
                    reason: "series order must be at least 1",
                });
            }
            Some(r)
        }
    };
    Ok((name, order))
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, order) = split_order(s)?;
        let plain = |id| match order {
            None => Ok(id),
            Some(_) => Err(Error::Parse(format!("{name} takes no order"))),
        };
        let ordered = |make: fn(u32) -> FormulaId| {
            order
                .map(make)
                .ok_or_else(|| Error::Parse(format!("{name} needs an order, e.g. {name}:3")))
        };
        match name.as_str() {
            "euler1" | "euler" => plain(FormulaId::Euler1),
            "tothmare2" | "tothmare" | "toth-mare" => plain(FormulaId::TothMare2),
            "ramanujanlodge3" | "ramanujan-lodge" => plain(FormulaId::RamanujanLodge3),
            "detemplewang4" | "detemple-wang" => plain(FormulaId::DeTempleWang4),
            "cesaro" => plain(FormulaId::Cesaro),
            "lodgel1" | "lodge" => plain(FormulaId::LodgeL1),
            "ramanujan" | "ramanujanseries" => ordered(FormulaId::RamanujanSeries),
            "dw" | "dwseries" => ordered(FormulaId::DWSeries),
            _ => Err(Error::Parse(format!("unknown formula {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceId {
    F,
    Lambda,
    LambdaL2,
    D,
    C,
    LodgeResidual,
    Rho,
    Delta,
    DeltaCap,
    Theta(u32),
}

impl SequenceId {
    /// Limit as `n -> infinity`, where the sequence has a finite nonzero one.
    pub fn limit(self) -> Option<Rational> {
        match self {
            SequenceId::F => Some(frac(1, 3)),
            SequenceId::Lambda | SequenceId::LambdaL2 => Some(frac(6, 5)),
            SequenceId::D => Some(frac(21, 5)),
            SequenceId::C => Some(int(1)),
            _ => None,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::F => write!(f, "f"),
            SequenceId::Lambda => write!(f, "lambda"),
            SequenceId::LambdaL2 => write!(f, "LambdaL2"),
            SequenceId::D => write!(f, "d"),
            SequenceId::C => write!(f, "c"),
            SequenceId::LodgeResidual => write!(f, "lodgeResidual"),
            SequenceId::Rho => write!(f, "rho"),
            SequenceId::Delta => write!(f, "delta"),
            SequenceId::DeltaCap => write!(f, "DeltaCap"),
            SequenceId::Theta(r) => write!(f, "theta:{r}"),
        }
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, order) = split_order(s)?;
        if name == "theta" {
            return order
                .map(SequenceId::Theta)
                .ok_or_else(|| Error::Parse("theta needs an order, e.g. theta:3".into()));
        }
        if order.is_some() {
            return Err(Error::Parse(format!("{name} takes no order")));
        }
        Ok(match name.as_str() {
            "f" => SequenceId::F,
            "lambda" => SequenceId::Lambda,
            "lambdal2" => SequenceId::LambdaL2,
            "d" => SequenceId::D,
            "c" => SequenceId::C,
            "lodgeresidual" => SequenceId::LodgeResidual,
            "rho" => SequenceId::Rho,
            "delta" => SequenceId::Delta,
            "deltacap" => SequenceId::DeltaCap,
            _ => return Err(Error::Parse(format!("unknown sequence {s:?}"))),
        })
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(FormulaId);
string_serde!(SequenceId);

/// Direction of an approximation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorSign {
    Over,
    Under,
    Undetermined,
}

impl From<SignOutcome> for ErrorSign {
    fn from(s: SignOutcome) -> Self {
        match s {
            SignOutcome::Positive => ErrorSign::Over,
            SignOutcome::Negative => ErrorSign::Under,
            SignOutcome::Undetermined => ErrorSign::Undetermined,
        }
    }
}

impl fmt::Display for ErrorSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorSign::Over => "over",
            ErrorSign::Under => "under",
            ErrorSign::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub n: u64,
    pub formula: FormulaId,
    pub approx: Enclosure,
    #[serde(serialize_with = "serialize_rational")]
    pub truth: Rational,
    pub error: Enclosure,
    pub sign: ErrorSign,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequencePoint {
    pub n: u64,
    pub which: SequenceId,
    pub value: Enclosure,
    /// The exact `H_n` the value derives from.
    #[serde(serialize_with = "serialize_rational")]
    pub truth: Rational,
    /// Whether `value` met the width target within the refinement budget.
    pub settled: bool,
}

fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_canonical(q))
}

pub const EVAL_CSV_HEADER: &str = "n,formula,lo,hi,truth_num,truth_den,sign,error_lo,error_hi";
pub const SEQUENCE_CSV_HEADER: &str = "n,which,lo,hi,truth_num,truth_den,sign";

impl EvalReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.formula,
            self.approx.lo_decimal(),
            self.approx.hi_decimal(),
            self.truth.numer(),
            self.truth.denom(),
            self.sign,
            self.error.lo_decimal(),
            self.error.hi_decimal()
        )
    }
}

impl SequencePoint {
    /// CSV row; the sign column is the certified sign of the value.
    pub fn csv_row(&self) -> String {
        let sign = match self.value.sign() {
            SignOutcome::Positive => "positive",
            SignOutcome::Negative => "negative",
            SignOutcome::Undetermined => "undetermined",
        };
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.which,
            self.value.lo_decimal(),
            self.value.hi_decimal(),
            self.truth.numer(),
            self.truth.denom(),
            sign
        )
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex {
            index: 0,
            reason: "n must be at least 1",
        })
    } else {
        Ok(())
    }
}

/// Starting working precision: the caller's bits plus what cancels when the
/// leading terms are subtracted.
pub(crate) fn working_bits(cfg: &PrecisionConfig, order: u32, n: u64) -> u32 {
    let m = (n as f64) * (n as f64 + 1.0) / 2.0;
    let lost = (order as f64 * m.max(2.0).log2()).ceil() as u32;
    let raw = cfg.bits + lost + 32;
    raw.div_ceil(32) * 32
}

pub(crate) fn eval_with_harmonic(
    id: FormulaId,
    n: u64,
    harmonic: &Rational,
    cfg: &PrecisionConfig,
) -> Result<EvalReport> {
    check_n(n)?;
    let expr = formula_error_expr(id, n)?;
    let (log_coeff, log_arg, corr) = expr::formula_parts(id, n)?;
    let start = working_bits(cfg, expr.order, n);
    let r = refine(
        cfg.max_refinements,
        start,
        |bits| expr.enclose(harmonic, bits).map(|e| (e, bits)),
        |(e, _)| e.sign() != SignOutcome::Undetermined && e.meets_width_target_at(cfg.bits, 8),
    )?;
    let (error, bits) = r.value;
    let approx = approx_enclosure(&log_coeff, &log_arg, &corr, bits)?;
    Ok(EvalReport {
        n,
        formula: id,
        approx,
        truth: harmonic.clone(),
        sign: error.sign().into(),
        error,
    })
}

fn approx_enclosure(
    log_coeff: &Rational,
    log_arg: &Rational,
    corr: &Rational,
    bits: u32,
) -> Result<Enclosure> {
    let w = bits + 16;
    let mut a = crate::precision::gamma_at(bits)?.add(&Enclosure::from_rational(corr, w));
    if !log_coeff.is_zero() && !log_arg.is_one() {
        a = a.add(&crate::precision::ln_at(log_arg, bits)?.mul_rational(log_coeff));
    }
    Ok(a)
}

/// Certified value of an approximate formula at `n`, with its error against
/// the exact `H_n`. The precision is raised until the error's sign is known.
pub fn eval_formula(id: FormulaId, n: u64, cfg: &PrecisionConfig) -> Result<EvalReport> {
    check_n(n)?;
    eval_with_harmonic(id, n, &harmonic_exact(n)?, cfg)
}

pub(crate) fn sequence_with_harmonic(
    which: SequenceId,
    n: u64,
    harmonic: &Rational,
    cfg: &PrecisionConfig,
) -> Result<SequencePoint> {
    check_n(n)?;
    let expr = sequence_expr(which, n)?;
    let r = refine_expr(&expr, n, harmonic, cfg, |e| e.meets_width_target_at(cfg.bits, 8))?;
    Ok(SequencePoint {
        n,
        which,
        value: r.0,
        truth: harmonic.clone(),
        settled: r.1,
    })
}

fn refine_expr(
    expr: &Expr,
    n: u64,
    harmonic: &Rational,
    cfg: &PrecisionConfig,
    accept: impl Fn(&Enclosure) -> bool,
) -> Result<(Enclosure, bool)> {
    let start = working_bits(cfg, expr.order, n);
    let r = refine(cfg.max_refinements, start, |bits| expr.enclose(harmonic, bits), accept)?;
    Ok((r.value, r.settled))
}

/// Certified value of a derived sequence at `n`.
pub fn sequence_value(which: SequenceId, n: u64, cfg: &PrecisionConfig) -> Result<SequencePoint> {
    check_n(n)?;
    sequence_with_harmonic(which, n, &harmonic_exact(n)?, cfg)
}

/// Like [`sequence_value`], but refines until `decide` accepts the
/// enclosure (for example, until it is separated from a bound).
pub fn sequence_value_until(
    which: SequenceId,
    n: u64,
    harmonic: &Rational,
    cfg: &PrecisionConfig,
    decide: impl Fn(&Enclosure) -> bool,
) -> Result<SequencePoint> {
    check_n(n)?;
    let expr = sequence_expr(which, n)?;
    let (value, settled) = refine_expr(&expr, n, harmonic, cfg, decide)?;
    Ok(SequencePoint {
        n,
        which,
        value,
        truth: harmonic.clone(),
        settled,
    })
}

/// Bracket ratio of the truncated Ramanujan series:
/// `(H_n - ln(2m)/2 - gamma - sum_{p<=r} R_p/m^p) m^{r+1} / R_{r+1}`.
pub fn theta_r(n: u64, r: u32, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_n(n)?;
    theta_with_harmonic(n, r, &harmonic_exact(n)?, cfg)
}

pub(crate) fn theta_with_harmonic(
    n: u64,
    r: u32,
    harmonic: &Rational,
    cfg: &PrecisionConfig,
) -> Result<Enclosure> {
    check_n(n)?;
    if r == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "series order must be at least 1",
        });
    }
    let p = sequence_with_harmonic(SequenceId::Theta(r), n, harmonic, cfg)?;
    if p.settled {
        Ok(p.value)
    } else {
        Err(Error::PrecisionExhausted {
            bits: cfg.bits,
            width: p.value.width_decimal(),
            best: Box::new(p.value),
        })
    }
}

/// `|error(n)|` divided by the table's predicted leading magnitude.
pub fn asymptotic_error_ratio(id: FormulaId, n: u64, cfg: &PrecisionConfig) -> Result<Enclosure> {
    check_n(n)?;
    let predicted = id.predicted_error(n).ok_or_else(|| {
        Error::Domain(format!("{id} has no tabulated asymptotic error estimate"))
    })?;
    let report = eval_formula(id, n, cfg)?;
    Ok(report.error.abs().mul_rational(&predicted.recip()))
}

/// `1 / (exact - gamma - log_coeff ln(log_arg)) + offset`, a closed form for
/// constants such as `1/(1 - gamma) - 2`, compared structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalForm {
    pub exact: Rational,
    pub log_coeff: Rational,
    pub log_arg: Rational,
    pub offset: Rational,
}

impl ReciprocalForm {
    pub fn new(exact: Rational, log_coeff: Rational, log_arg: Rational, offset: Rational) -> Self {
        let (log_coeff, log_arg) = if log_arg.is_one() || log_coeff.is_zero() {
            (Rational::zero(), Rational::one())
        } else {
            (log_coeff, log_arg)
        };
        Self {
            exact,
            log_coeff,
            log_arg,
            offset,
        }
    }

    /// The closed form of a reciprocal-shaped sequence at `n`: `f`, `lambda`,
    /// `LambdaL2` and `d`.
    pub fn of_sequence(which: SequenceId, n: u64) -> Result<Option<Self>> {
        check_n(n)?;
        let expr = sequence_expr(which, n)?;
        let Shape::Reciprocal { scale, offset } = &expr.shape else {
            return Ok(None);
        };
        if !scale.is_one() {
            return Ok(None);
        }
        let res = &expr.residual;
        Ok(Some(Self::new(
            harmonic_exact(n)? + &res.exact,
            res.log_coeff.clone(),
            res.log_arg.clone(),
            offset.clone(),
        )))
    }

    pub fn enclose(&self, cfg: &PrecisionConfig) -> Result<Enclosure> {
        let bits = cfg.bits + 32;
        let r = refine(
            cfg.max_refinements,
            bits,
            |b| {
                let mut d = Enclosure::from_rational(&self.exact, b + 16)
                    .sub(&crate::precision::gamma_at(b)?);
                if !self.log_coeff.is_zero() {
                    d = d.sub(&crate::precision::ln_at(&self.log_arg, b)?.mul_rational(&self.log_coeff));
                }
                Ok(d.recip()?.add_rational(&self.offset))
            },
            |e: &Enclosure| e.meets_width_target_at(cfg.bits, 8),
        )?;
        Ok(r.value)
    }
}

impl fmt::Display for ReciprocalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/({} - gamma", self.exact)?;
        if !self.log_coeff.is_zero() {
            write!(f, " - ({}) ln({})", self.log_coeff, self.log_arg)?;
        }
        write!(f, ")")?;
        if self.offset.is_negative() {
            write!(f, " - {}", -self.offset.clone())
        } else {
            write!(f, " + {}", self.offset)
        }
    }
}

/// The three sharp constants at `n = 1`.
pub fn sharp_constant(which: SequenceId) -> Option<ReciprocalForm> {
    let one = Rational::one;
    Some(match which {
        // 1/(1 - gamma) - 2
        SequenceId::F => ReciprocalForm::new(one(), Rational::zero(), one(), int(-2)),
        // 1/(1 - gamma - ln sqrt 2) - 12
        SequenceId::Lambda | SequenceId::LambdaL2 => {
            ReciprocalForm::new(one(), frac(1, 2), int(2), int(-12))
        }
        // 1/(1 - ln(3/2) - gamma) - 54
        SequenceId::D => ReciprocalForm::new(one(), one(), frac(3, 2), int(-54)),
        _ => return None,
    })
}
