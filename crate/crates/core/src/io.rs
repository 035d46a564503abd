//! JSON carriers for overlap operators.
//!
//! A unitary file is `{"dim": d, "matrix": [[[re, im], ...], ...]}` with row
//! `m`, column `n` holding `<a_m|b_n>`. A theta template has the same layout
//! with `cos` and `sin` coefficient matrices instead of `matrix`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::ThetaTemplate;
use crate::linalg::{gram_schmidt_columns, unitarity_deviation, ComplexMatrix};
use crate::measurement::{BasisPair, UNITARY_TOL};

/// Loosest deviation accepted when re-orthonormalization is requested.
pub const REORTHONORMALIZE_TOL: f64 = 1e-2;

type Entries = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitaryFile {
    pub dim: usize,
    pub matrix: Entries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateFile {
    pub dim: usize,
    pub cos: Entries,
    pub sin: Entries,
}

/// A pair read from disk, plus the deviation removed on load (0 if untouched).
#[derive(Clone, Debug)]
pub struct LoadedPair {
    pub pair: BasisPair,
    pub deviation: f64,
    pub reorthonormalized: bool,
}

fn to_matrix(dim: usize, rows: &Entries, what: &str) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse(format!(
            "{what} must be a {dim}x{dim} array of [re, im] pairs"
        )));
    }
    let data = rows
        .iter()
        .flat_map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)))
        .collect();
    ComplexMatrix::new(dim, dim, data)
}

fn from_matrix(m: &ComplexMatrix) -> Entries {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}

impl UnitaryFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dim: m.rows(),
            matrix: from_matrix(m),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        to_matrix(self.dim, &self.matrix, "matrix")
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Validates unitarity at `1e-8`, or at `1e-2` followed by Gram-Schmidt
    /// when `reorthonormalize` is set.
    pub fn into_pair(&self, reorthonormalize: bool) -> Result<LoadedPair> {
        let m = self.to_matrix()?;
        let deviation = unitarity_deviation(&m)?;
        if deviation <= UNITARY_TOL {
            return Ok(LoadedPair {
                pair: BasisPair::new(m)?,
                deviation,
                reorthonormalized: false,
            });
        }
        if reorthonormalize && deviation <= REORTHONORMALIZE_TOL {
            return Ok(LoadedPair {
                pair: BasisPair::new(gram_schmidt_columns(&m)?)?,
                deviation,
                reorthonormalized: true,
            });
        }
        Err(Error::NotUnitary { deviation })
    }
}

impl TemplateFile {
    pub fn from_template(t: &ThetaTemplate) -> Self {
        Self {
            dim: t.dim(),
            cos: from_matrix(&t.cos),
            sin: from_matrix(&t.sin),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_template(&self) -> Result<ThetaTemplate> {
        ThetaTemplate::new(
            to_matrix(self.dim, &self.cos, "cos")?,
            to_matrix(self.dim, &self.sin, "sin")?,
        )
    }
}

pub fn read_unitary_file(path: &Path) -> Result<UnitaryFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    UnitaryFile::parse(&text)
}

pub fn read_template_file(path: &Path) -> Result<TemplateFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    TemplateFile::parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_is_bit_exact() {
        let u = crate::measurement::random_unitary(4, 99);
        let file = UnitaryFile::from_matrix(&u);
        let back = UnitaryFile::parse(&file.to_json())
            .unwrap()
            .to_matrix()
            .unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn rejects_bad_shapes_and_non_unitary() {
        assert!(UnitaryFile::parse(r#"{"dim": 2, "matrix": [[[1,0]]]}"#)
            .unwrap()
            .to_matrix()
            .is_err());
        assert!(UnitaryFile::parse("{").is_err());
        let f =
            UnitaryFile::parse(r#"{"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0],[2,0]]]}"#).unwrap();
        assert!(matches!(f.into_pair(false), Err(Error::NotUnitary { .. })));
        assert!(matches!(f.into_pair(true), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn reorthonormalization_window() {
        let f = UnitaryFile::parse(r#"{"dim": 2, "matrix": [[[1.001,0],[0,0]],[[0,0],[1,0]]]}"#)
            .unwrap();
        assert!(f.into_pair(false).is_err());
        let loaded = f.into_pair(true).unwrap();
        assert!(loaded.reorthonormalized);
        assert!(loaded.deviation > 1e-3);
    }

    #[test]
    fn template_round_trip() {
        let t = fixtures::fig7_template();
        let back = TemplateFile::parse(&TemplateFile::from_template(&t).to_json())
            .unwrap()
            .to_template()
            .unwrap();
        assert_eq!(back, t);
    }
}
