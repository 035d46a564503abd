//! Entropic lower bounds and the sampled audit of the majorization relation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{majorizes, prefix_deficit, tensor_weights, LogBase, UncertaintyMeasure};
use crate::measurement::{
    a_weights, b_weights, derive_seed, overlap_stats, sample_haar_state, BasisPair,
};
use crate::omega::{omega_vector, MajorizationVector};

/// Overlap above which the majorization bound is the reported Shannon branch.
/// Stored as the two-digit constant, used only for labelling.
pub const C_STAR: f64 = 0.834;

const BRANCH_EPS: f64 = 1e-12;

/// Maximum number of offending sample indices kept in a report.
pub const MAX_RECORDED_VIOLATIONS: usize = 32;

/// Maassen-Uffink bound `-2 log c`.
pub fn mu_bound(c: f64, base: LogBase) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::OutOfRange(format!("overlap c = {c} outside (0, 1]")));
    }
    Ok(-2.0 * base.log(c))
}

/// Branch of the piecewise Shannon bound selected by the overlap `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PiecewiseBranch {
    /// `c <= 1/sqrt(2)`: Maassen-Uffink.
    MaassenUffink,
    /// `1/sqrt(2) < c < c*`: the literature bound for this range is not
    /// available here; the larger of the two computed bounds is reported.
    MiddleUnavailable,
    /// `c >= c*`: entropy of the majorization vector.
    Jpdd,
}

impl PiecewiseBranch {
    pub fn classify(c: f64) -> Self {
        if c <= std::f64::consts::FRAC_1_SQRT_2 + BRANCH_EPS {
            PiecewiseBranch::MaassenUffink
        } else if c < C_STAR {
            PiecewiseBranch::MiddleUnavailable
        } else {
            PiecewiseBranch::Jpdd
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PiecewiseBranch::MaassenUffink => "MU_branch",
            PiecewiseBranch::MiddleUnavailable => "middle_unavailable",
            PiecewiseBranch::Jpdd => "G_branch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub c: f64,
    pub b_mu: f64,
    pub b_jpdd: f64,
    pub measure: UncertaintyMeasure,
    /// Only classified for Shannon entropy.
    pub piecewise_branch: Option<PiecewiseBranch>,
    pub piecewise_value: Option<f64>,
    pub omega: MajorizationVector,
    pub warnings: Vec<String>,
}

pub fn jpdd_bound(pair: &BasisPair, measure: &UncertaintyMeasure) -> Result<BoundReport> {
    let c = overlap_stats(pair).c.min(1.0);
    let b_mu = mu_bound(c, measure.log_base)?;
    let (omega, table) = omega_vector(pair)?;
    let b_jpdd = measure.evaluate(omega.entries());

    let mut warnings = table.findings.clone();
    let (piecewise_branch, piecewise_value) = if measure.is_shannon() {
        let branch = PiecewiseBranch::classify(c);
        let value = match branch {
            PiecewiseBranch::MaassenUffink => b_mu,
            PiecewiseBranch::MiddleUnavailable => {
                warnings.push(
                    "middle branch H_1(c) unavailable; reporting max(b_mu, b_jpdd)".to_string(),
                );
                b_mu.max(b_jpdd)
            }
            PiecewiseBranch::Jpdd => b_jpdd,
        };
        (Some(branch), Some(value))
    } else {
        (None, None)
    };

    Ok(BoundReport {
        c,
        b_mu,
        b_jpdd,
        measure: *measure,
        piecewise_branch,
        piecewise_value,
        omega,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub violations_majorization: usize,
    /// Largest `prefix(p (x) q) - prefix(omega)` seen; positive means a violation.
    pub worst_prefix_deficit: f64,
    pub violations_entropy: usize,
    /// Smallest `H(p) + H(q) - H(omega)` seen (natural log); negative means a violation.
    pub worst_entropy_gap: f64,
    /// Sample indices (for `derive_seed(seed, index)`) of the first offending states.
    pub violating_samples: Vec<usize>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations_majorization == 0 && self.violations_entropy == 0
    }
}

/// Audits the majorization relation and its Shannon consequence on Haar states.
pub fn verify_uur(
    pair: &BasisPair,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let (omega, _) = omega_vector(pair)?;
    verify_against(pair, &omega, samples, seed, tol)
}

/// Same as [`verify_uur`] with a precomputed majorization vector.
pub fn verify_against(
    pair: &BasisPair,
    omega: &MajorizationVector,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "at least one sample is required".into(),
        ));
    }
    let shannon = UncertaintyMeasure::shannon();
    let h_omega = shannon.evaluate(omega.entries());
    let d = pair.dim();
    let u = pair.overlap_unitary();

    let mut report = VerificationReport {
        samples,
        seed,
        tol,
        violations_majorization: 0,
        worst_prefix_deficit: f64::NEG_INFINITY,
        violations_entropy: 0,
        worst_entropy_gap: f64::INFINITY,
        violating_samples: Vec::new(),
    };
    for i in 0..samples {
        let psi = sample_haar_state(d, derive_seed(seed, i as u64));
        let p = a_weights(psi.amplitudes());
        let q = b_weights(u, psi.amplitudes());
        let joint = tensor_weights(&p, &q);

        report.worst_prefix_deficit = report
            .worst_prefix_deficit
            .max(prefix_deficit(omega.entries(), &joint));
        let bad_major = !majorizes(omega.entries(), &joint, tol);

        let slack = shannon.evaluate(&p) + shannon.evaluate(&q) - h_omega;
        report.worst_entropy_gap = report.worst_entropy_gap.min(slack);
        let bad_entropy = slack < -tol;

        report.violations_majorization += usize::from(bad_major);
        report.violations_entropy += usize::from(bad_entropy);
        if (bad_major || bad_entropy) && report.violating_samples.len() < MAX_RECORDED_VIOLATIONS {
            report.violating_samples.push(i);
        }
    }
    Ok(report)
}
