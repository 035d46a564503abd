//! Majorization and Schur-concave uncertainty measures.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::ProbabilityVector;

/// Default tolerance for prefix-sum comparisons.
pub const MAJORIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    fn ln_scale(self) -> f64 {
        match self {
            LogBase::Natural => 1.0,
            LogBase::Two => std::f64::consts::LN_2,
        }
    }

    /// Logarithm of `x` in this base.
    pub fn log(self, x: f64) -> f64 {
        x.ln() / self.ln_scale()
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" | "e" | "ln" => Ok(LogBase::Natural),
            "two" | "2" => Ok(LogBase::Two),
            other => Err(Error::Parse(format!(
                "unknown log base '{other}' (natural | two)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MeasureKind {
    Shannon,
    Renyi(f64),
    Tsallis(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyMeasure {
    pub kind: MeasureKind,
    pub log_base: LogBase,
}

impl UncertaintyMeasure {
    pub fn new(kind: MeasureKind, log_base: LogBase) -> Result<Self> {
        let check = |name: &str, x: f64| {
            if x.is_nan() || x <= 0.0 || x == 1.0 || !x.is_finite() {
                Err(Error::InvalidParameter(format!(
                    "{name} order must be positive, finite and != 1, got {x}"
                )))
            } else {
                Ok(())
            }
        };
        match kind {
            MeasureKind::Shannon => {}
            MeasureKind::Renyi(a) => check("Renyi", a)?,
            MeasureKind::Tsallis(q) => check("Tsallis", q)?,
        }
        Ok(Self { kind, log_base })
    }

    pub fn shannon() -> Self {
        Self {
            kind: MeasureKind::Shannon,
            log_base: LogBase::Natural,
        }
    }

    pub fn is_shannon(&self) -> bool {
        matches!(self.kind, MeasureKind::Shannon)
    }

    /// Parses `shannon`, `renyi:<alpha>` or `tsallis:<q>`.
    pub fn parse(spec: &str, log_base: LogBase) -> Result<Self> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let order = |p: Option<&str>| -> Result<f64> {
            let p = p.ok_or_else(|| {
                Error::Parse(format!("measure '{spec}' needs an order, e.g. {name}:2"))
            })?;
            p.parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad order '{p}' in measure '{spec}'")))
        };
        let kind = match name.to_ascii_lowercase().as_str() {
            "shannon" if param.is_none() => MeasureKind::Shannon,
            "renyi" => MeasureKind::Renyi(order(param)?),
            "tsallis" => MeasureKind::Tsallis(order(param)?),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown measure '{spec}' (shannon | renyi:<alpha> | tsallis:<q>)"
                )))
            }
        };
        Self::new(kind, log_base)
    }

    /// Value on raw nonnegative weights.
    pub fn evaluate(&self, v: &[f64]) -> f64 {
        let b = self.log_base;
        match self.kind {
            MeasureKind::Shannon => -v
                .iter()
                .filter(|&&x| x > 0.0)
                .map(|&x| x * b.log(x))
                .sum::<f64>(),
            MeasureKind::Renyi(a) => {
                let s: f64 = v.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(a)).sum();
                b.log(s) / (1.0 - a)
            }
            MeasureKind::Tsallis(q) => {
                let s: f64 = v.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(q)).sum();
                (1.0 - s) / (q - 1.0)
            }
        }
    }
}

impl fmt::Display for UncertaintyMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.log_base {
            LogBase::Natural => "natural log",
            LogBase::Two => "log base 2",
        };
        match self.kind {
            MeasureKind::Shannon => write!(f, "shannon ({base})"),
            MeasureKind::Renyi(a) => write!(f, "renyi:{a} ({base})"),
            MeasureKind::Tsallis(q) => write!(f, "tsallis:{q}"),
        }
    }
}

pub fn measure_value(m: &UncertaintyMeasure, v: &ProbabilityVector) -> f64 {
    m.evaluate(v.weights())
}

/// `(p_i q_j)` in row-major order.
pub fn tensor_distribution(p: &ProbabilityVector, q: &ProbabilityVector) -> ProbabilityVector {
    let weights = tensor_weights(p.weights(), q.weights());
    ProbabilityVector::new(weights).expect("product of distributions is a distribution")
}

pub(crate) fn tensor_weights(p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter()
        .flat_map(|&a| q.iter().map(move |&b| a * b))
        .collect()
}

/// Largest value of `prefix_x - prefix_y` over descending-sorted prefixes,
/// including the totals. Non-positive when `x` is majorized by `y`.
pub fn prefix_deficit(y: &[f64], x: &[f64]) -> f64 {
    let n = x.len().max(y.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (xs, ys) = (sorted(x), sorted(y));
    let (mut px, mut py) = (0.0, 0.0);
    let mut worst = f64::NEG_INFINITY;
    for (a, b) in xs.iter().zip(&ys) {
        px += a;
        py += b;
        worst = worst.max(px - py);
    }
    worst
}

/// True iff `x` is majorized by `y` up to `tol`. The shorter vector is
/// padded with zeros.
pub fn majorizes(y: &[f64], x: &[f64], tol: f64) -> bool {
    let total = |v: &[f64]| v.iter().sum::<f64>();
    prefix_deficit(y, x) <= tol && (total(x) - total(y)).abs() <= tol
}
