//! Reproducible experiments. Every trial draws from its own ChaCha8 stream
//! keyed by `(seed, trial index)`, so serial and parallel runs agree.

mod experiments;
mod tables;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Rational;

pub use experiments::{
    caputo_trial, classsum_report, verify_aldous, verify_interlacing, verify_kazhdan, verify_lemma_w2,
    verify_octopus, SubsetLaw,
};
pub use tables::{table1, table2, Table1Row, Table2Row};

/// Largest denominator of randomly drawn rational weights.
pub const MAX_DENOMINATOR: i64 = 64;

/// One recorded comparison: both sides and the tolerance used.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// `|lhs − rhs| ≤ tol · max(1, |rhs|)`.
    pub fn close(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let pass = if lhs.is_infinite() || rhs.is_infinite() {
            lhs == rhs
        } else {
            (lhs - rhs).abs() <= tol * rhs.abs().max(1.0)
        };
        Self {
            name: name.into(),
            lhs: num(lhs),
            rhs: num(rhs),
            tol,
            pass,
        }
    }

    /// `lhs ≤ rhs + tol`.
    pub fn at_most(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            lhs: num(lhs),
            rhs: num(rhs),
            tol,
            pass: lhs <= rhs + tol,
        }
    }

    /// `lhs ≥ rhs − tol`.
    pub fn at_least(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            lhs: num(lhs),
            rhs: num(rhs),
            tol,
            pass: lhs >= rhs - tol,
        }
    }

    pub fn exact<T: PartialEq + Serialize>(name: &str, lhs: &T, rhs: &T) -> Self {
        Self {
            name: name.into(),
            lhs: serde_json::to_value(lhs).unwrap_or(Value::Null),
            rhs: serde_json::to_value(rhs).unwrap_or(Value::Null),
            tol: 0.0,
            pass: lhs == rhs,
        }
    }

    pub fn flag(name: &str, value: bool) -> Self {
        Self {
            name: name.into(),
            lhs: json!(value),
            rhs: json!(true),
            tol: 0.0,
            pass: value,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub pass: bool,
    /// Distance from failure; the trial with the smallest slack is the worst case.
    pub slack: f64,
    pub checks: Vec<Check>,
    /// Trial input (weights, subset family, …), enough to replay it.
    pub input: Value,
}

impl TrialRecord {
    pub fn new(trial: usize, slack: f64, checks: Vec<Check>, input: Value) -> Self {
        Self {
            trial,
            pass: checks.iter().all(|c| c.pass),
            slack,
            checks,
            input,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Params {
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    #[serde(flatten)]
    pub extra: serde_json::Map<String, Value>,
}

impl Params {
    pub fn new(n: Option<usize>, trials: usize, seed: Option<u64>, tol: Option<f64>) -> Self {
        Self {
            n,
            trials,
            seed,
            tol,
            extra: serde_json::Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.into(), value);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Params,
    pub pass: bool,
    pub records: Vec<TrialRecord>,
    /// Index into `records` of the trial with the least slack.
    pub worst: Option<usize>,
    pub summary: Value,
    /// Aligned plain-text rendering.
    #[serde(skip)]
    pub text: String,
}

impl ExperimentReport {
    pub fn new(experiment: &str, params: Params, records: Vec<TrialRecord>, summary: Value, text: String) -> Self {
        let worst = records
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.pass.cmp(&b.1.pass).then(a.1.slack.total_cmp(&b.1.slack)))
            .map(|(k, _)| k);
        Self {
            experiment: experiment.into(),
            params,
            pass: records.iter().all(|r| r.pass),
            records,
            worst,
            summary,
            text,
        }
    }

    pub fn worst_record(&self) -> Option<&TrialRecord> {
        self.worst.map(|k| &self.records[k])
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }
}

/// `f64` as JSON, with `±∞` as the strings `"inf"` / `"-inf"`.
pub fn num(x: f64) -> Value {
    if x.is_infinite() {
        json!(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        json!(x)
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!(r.to_string())
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Uniform rational in `(0, 1]` with denominator at most [`MAX_DENOMINATOR`].
pub(crate) fn positive_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    let num = rng.gen_range(1..=den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nonnegative rational in `[0, 1]`, zero with probability `p_zero`.
pub(crate) fn nonnegative_rational(rng: &mut ChaCha8Rng, p_zero: f64) -> Rational {
    if rng.gen_bool(p_zero) {
        Rational::zero()
    } else {
        positive_rational(rng)
    }
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite rational")
}

/// Right-aligned columns separated by `|`, ruled like the printed tables.
pub(crate) fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!(" {c:>w$} ", w = *w))
            .collect();
        format!("|{}|\n", parts.join("|"))
    };
    let rule = format!(
        "|{}|\n",
        widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|")
    );
    let mut out = rule.clone();
    out.push_str(&line(headers.to_vec()));
    out.push_str(&rule.replace('-', "="));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push_str(&rule);
    }
    out
}
