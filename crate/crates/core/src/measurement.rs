//! Measurement bases, outcome statistics and random states.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_columns, unitarity_deviation, ComplexMatrix, StateVector};

/// Tolerance for accepting an overlap operator as unitary.
pub const UNITARY_TOL: f64 = 1e-8;

/// Two orthonormal bases `{a_m}`, `{b_n}` of a d-dimensional space, stored as
/// the overlap operator `U[m][n] = <a_m|b_n>`.
///
/// States are always expressed in the A basis, so `|a_m>` is `e_m` and
/// `|b_n>` is the n-th column of `U`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisPair {
    overlap: ComplexMatrix,
}

impl BasisPair {
    pub fn new(overlap: ComplexMatrix) -> Result<Self> {
        let deviation = unitarity_deviation(&overlap)?;
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        if overlap.rows() < 2 {
            return Err(Error::OutOfRange(format!(
                "basis pair dimension must be at least 2, got {}",
                overlap.rows()
            )));
        }
        Ok(Self { overlap })
    }

    pub fn dim(&self) -> usize {
        self.overlap.rows()
    }

    pub fn overlap_unitary(&self) -> &ComplexMatrix {
        &self.overlap
    }

    /// `|b_n>` in A-basis coordinates.
    pub fn b_vector(&self, n: usize) -> Vec<Complex64> {
        self.overlap.column(n)
    }
}

/// Outcome distribution of a measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector {
    weights: Vec<f64>,
}

impl ProbabilityVector {
    pub const NEGATIVE_TOL: f64 = 1e-12;
    pub const SUM_TOL: f64 = 1e-9;

    /// Validates and clamps tiny negative rounding noise to zero.
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        for w in &mut weights {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if *w < -Self::NEGATIVE_TOL {
                return Err(Error::InvalidProbability(format!("negative weight {w}")));
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::InvalidProbability(format!("weights sum to {sum}")));
        }
        Ok(Self { weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Copy sorted in descending order (stable, ties keep multiplicity).
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.weights.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

/// Overlap statistics entering the closed forms for the first two partial sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapStats {
    /// `max |U_mn|`
    pub c: f64,
    /// `max(c21, c22)`
    pub c_prime: f64,
    /// Best two entries sharing a row.
    pub c21: f64,
    /// Best two entries sharing a column.
    pub c22: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    A,
    B,
}

/// Matrix of moduli `|U_mn|` (real entries).
pub fn overlap_matrix(pair: &BasisPair) -> ComplexMatrix {
    let u = pair.overlap_unitary();
    ComplexMatrix::from_fn(u.rows(), u.cols(), |r, c| {
        Complex64::new(u[(r, c)].norm(), 0.0)
    })
}

pub fn overlap_stats(pair: &BasisPair) -> OverlapStats {
    let d = pair.dim();
    let u = pair.overlap_unitary();
    let sq = |m: usize, n: usize| u[(m, n)].norm_sqr();

    let mut c = 0.0_f64;
    let mut c21 = 0.0_f64;
    let mut c22 = 0.0_f64;
    for m in 0..d {
        for n in 0..d {
            c = c.max(u[(m, n)].norm());
            for other in (n + 1)..d {
                c21 = c21.max((sq(m, n) + sq(m, other)).sqrt());
            }
            for other in (m + 1)..d {
                c22 = c22.max((sq(m, n) + sq(other, n)).sqrt());
            }
        }
    }
    OverlapStats {
        c,
        c_prime: c21.max(c22),
        c21,
        c22,
    }
}

/// `|<a_m|psi>|^2` for every m.
pub(crate) fn a_weights(psi: &[Complex64]) -> Vec<f64> {
    psi.iter().map(|z| z.norm_sqr()).collect()
}

/// `|<b_n|psi>|^2` for every n.
pub(crate) fn b_weights(u: &ComplexMatrix, psi: &[Complex64]) -> Vec<f64> {
    let d = u.rows();
    (0..d)
        .map(|n| {
            let amp: Complex64 = (0..d).map(|m| u[(m, n)].conj() * psi[m]).sum();
            amp.norm_sqr()
        })
        .collect()
}

/// Measurement statistics of `psi` in basis A or B.
pub fn probabilities(
    pair: &BasisPair,
    psi: &StateVector,
    which: Basis,
) -> Result<ProbabilityVector> {
    if psi.dim() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: psi.dim(),
        });
    }
    let weights = match which {
        Basis::A => a_weights(psi.amplitudes()),
        Basis::B => b_weights(pair.overlap_unitary(), psi.amplitudes()),
    };
    ProbabilityVector::new(weights)
}

fn gaussian_amplitudes(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex Gaussians.
pub fn sample_haar_state(dim: usize, seed: u64) -> StateVector {
    assert!(dim >= 1, "state dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Ok(s) = StateVector::normalized(gaussian_amplitudes(dim, &mut rng)) {
            return s;
        }
    }
}

/// Random unitary from a complex Gaussian matrix orthonormalized column by column.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = ComplexMatrix::new(dim, dim, gaussian_amplitudes(dim * dim, &mut rng))
            .expect("finite gaussian entries");
        if let Ok(u) = gram_schmidt_columns(&g) {
            return u;
        }
    }
}

/// Basis pair with a Haar-like random overlap operator.
pub fn random_pair(dim: usize, seed: u64) -> BasisPair {
    BasisPair::new(random_unitary(dim, seed)).expect("orthonormalized matrix is unitary")
}

/// Derives an independent 64-bit seed for stream `index` (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
