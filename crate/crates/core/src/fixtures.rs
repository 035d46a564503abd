//! Standard basis pairs used by tests, benchmarks and the CLI presets.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_columns, unitarity_deviation, ComplexMatrix};
use crate::measurement::BasisPair;

/// Identical bases.
pub fn identity(dim: usize) -> BasisPair {
    BasisPair::new(ComplexMatrix::identity(dim)).expect("identity of dimension >= 2")
}

/// Qubit computational and Hadamard bases.
pub fn hadamard() -> BasisPair {
    let h = 0.5f64.sqrt();
    BasisPair::new(ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).unwrap()).unwrap()
}

/// Computational and Fourier bases, `U_mn = exp(2 pi i m n / d) / sqrt(d)`.
pub fn fourier(dim: usize) -> Result<BasisPair> {
    let scale = 1.0 / (dim as f64).sqrt();
    let u = ComplexMatrix::from_fn(dim, dim, |m, n| {
        Complex64::from_polar(scale, 2.0 * PI * (m * n % dim.max(1)) as f64 / dim as f64)
    });
    BasisPair::new(u)
}

/// Real qubit rotation whose largest overlap equals `c`.
pub fn qubit_rotation(c: f64) -> Result<BasisPair> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::OutOfRange(format!("overlap {c} outside (0, 1]")));
    }
    if c < 0.5f64.sqrt() {
        return Err(Error::OutOfRange(format!(
            "a qubit pair cannot have maximal overlap {c} < 1/sqrt(2)"
        )));
    }
    let s = (1.0 - c * c).sqrt();
    BasisPair::new(ComplexMatrix::from_real_rows(&[vec![c, -s], vec![s, c]])?)
}

/// Overlap operator `cos(theta) * A + sin(theta) * B`, re-orthonormalized on load.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaTemplate {
    pub cos: ComplexMatrix,
    pub sin: ComplexMatrix,
}

/// A pair built from a template, with the deviation removed by orthonormalization.
#[derive(Clone, Debug)]
pub struct ThetaFixture {
    pub theta: f64,
    /// Template evaluated at `theta`, before correction.
    pub printed: ComplexMatrix,
    /// Max entrywise deviation of `printed^dagger printed` from the identity.
    pub deviation: f64,
    pub pair: BasisPair,
}

impl ThetaTemplate {
    pub fn new(cos: ComplexMatrix, sin: ComplexMatrix) -> Result<Self> {
        if !cos.is_square() {
            return Err(Error::NotSquare {
                rows: cos.rows(),
                cols: cos.cols(),
            });
        }
        if (cos.rows(), cos.cols()) != (sin.rows(), sin.cols()) {
            return Err(Error::DimensionMismatch {
                expected: cos.rows(),
                found: sin.rows(),
            });
        }
        Ok(Self { cos, sin })
    }

    pub fn dim(&self) -> usize {
        self.cos.rows()
    }

    pub fn evaluate(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        ComplexMatrix::from_fn(self.dim(), self.dim(), |r, k| {
            self.cos[(r, k)] * c + self.sin[(r, k)] * s
        })
    }

    pub fn at(&self, theta: f64) -> Result<ThetaFixture> {
        let printed = self.evaluate(theta);
        let deviation = unitarity_deviation(&printed)?;
        let pair = BasisPair::new(gram_schmidt_columns(&printed)?)?;
        Ok(ThetaFixture {
            theta,
            printed,
            deviation,
            pair,
        })
    }
}

/// The four-dimensional theta family with two-digit printed coefficients.
pub fn fig7_template() -> ThetaTemplate {
    #[rustfmt::skip]
    let cos = [
        [0.63, 0.67, -0.13, -0.37],
        [0.54, -0.62, 0.43, 0.43],
        [-0.30, 0.4, 0.86, -0.098],
        [-0.47, -0.072, -0.23, -0.85],
    ];
    #[rustfmt::skip]
    let sin = [
        [0.54, -0.62, 0.43, -0.36],
        [-0.63, -0.67, 0.13, 0.13],
        [-0.47, -0.072, -0.23, -0.85],
        [0.30, -0.4, -0.86, 0.098],
    ];
    let to_matrix = |rows: [[f64; 4]; 4]| {
        ComplexMatrix::from_real_rows(&rows.map(|r| r.to_vec())).expect("4x4 literal")
    };
    ThetaTemplate::new(to_matrix(cos), to_matrix(sin)).expect("matching shapes")
}

pub fn fig7(theta: f64) -> Result<ThetaFixture> {
    fig7_template().at(theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        assert_eq!(identity(4).dim(), 4);
        assert_eq!(hadamard().dim(), 2);
        for d in 2..=6 {
            assert_eq!(fourier(d).unwrap().dim(), d);
        }
    }

    #[test]
    fn rotation_overlap() {
        let pair = qubit_rotation(0.9).unwrap();
        let s = crate::measurement::overlap_stats(&pair);
        assert!((s.c - 0.9).abs() < 1e-15);
        assert!(qubit_rotation(0.5).is_err());
        assert!(qubit_rotation(1.5).is_err());
    }

    #[test]
    fn fig7_needs_correction() {
        for theta in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let fx = fig7(theta).unwrap();
            assert!(
                fx.deviation > 1e-4 && fx.deviation < 1.0,
                "{}",
                fx.deviation
            );
            assert!(unitarity_deviation(fx.pair.overlap_unitary()).unwrap() < 1e-12);
        }
    }
}
