//! Bound curves over a one-parameter family of overlap operators.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::jpdd_bound;
use crate::error::{Error, Result};
use crate::fixtures::ThetaTemplate;
use crate::majorization::UncertaintyMeasure;

pub const CSV_HEADER: &str = "theta,c,b_jpdd,b_mu";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: f64,
    pub c: f64,
    pub b_jpdd: f64,
    pub b_mu: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// Largest unitarity deviation corrected at any grid point.
    pub max_reorthonormalization_deviation: f64,
    /// Envelope findings and warnings, prefixed with their theta.
    pub findings: Vec<String>,
}

/// Half-open uniform grid `from + i (to - from) / steps`, `i < steps`.
pub fn theta_grid(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() {
        return Err(Error::InvalidParameter("theta range must be finite".into()));
    }
    if from >= to {
        return Err(Error::InvalidParameter(format!(
            "empty theta range [{from}, {to})"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive".into()));
    }
    let h = (to - from) / steps as f64;
    Ok((0..steps).map(|i| from + h * i as f64).collect())
}

pub fn scan_theta(
    template: &ThetaTemplate,
    from: f64,
    to: f64,
    steps: usize,
    measure: &UncertaintyMeasure,
) -> Result<ScanResult> {
    let mut rows = Vec::with_capacity(steps);
    let mut max_dev = 0.0_f64;
    let mut findings = Vec::new();
    for theta in theta_grid(from, to, steps)? {
        let fixture = template.at(theta)?;
        max_dev = max_dev.max(fixture.deviation);
        let report = jpdd_bound(&fixture.pair, measure)?;
        findings.extend(
            report
                .warnings
                .iter()
                .map(|w| format!("theta={theta}: {w}")),
        );
        rows.push(ScanRow {
            theta,
            c: report.c,
            b_jpdd: report.b_jpdd,
            b_mu: report.b_mu,
        });
    }
    Ok(ScanResult {
        rows,
        max_reorthonormalization_deviation: max_dev,
        findings,
    })
}

/// Locale-independent CSV using shortest round-trip float formatting.
pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{:?},{:?},{:?},{:?}", r.theta, r.c, r.b_jpdd, r.b_mu).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn grid_validation() {
        assert_eq!(theta_grid(0.0, 1.0, 4).unwrap(), vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!(theta_grid(0.3, 1.0, 1).unwrap(), vec![0.3]);
        assert!(theta_grid(1.0, 1.0, 4).is_err());
        assert!(theta_grid(0.0, 1.0, 0).is_err());
        assert!(theta_grid(0.0, f64::NAN, 3).is_err());
    }

    #[test]
    fn short_fig7_scan() {
        let res = scan_theta(
            &fixtures::fig7_template(),
            0.0,
            2.0 * std::f64::consts::PI,
            8,
            &UncertaintyMeasure::shannon(),
        )
        .unwrap();
        assert_eq!(res.rows.len(), 8);
        assert!(res
            .rows
            .iter()
            .all(|r| r.b_jpdd >= 0.0 && r.b_jpdd.is_finite()));
        assert!(res.max_reorthonormalization_deviation > 0.0);
        let csv = to_csv(&res.rows);
        assert!(csv.starts_with("theta,c,b_jpdd,b_mu\n"));
        assert_eq!(csv.lines().count(), 9);
    }
}
