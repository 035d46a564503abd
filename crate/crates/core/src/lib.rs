//! Tightened majorization vectors for two-measurement uncertainty relations.
//!
//! Given the overlap operator `U_mn = <a_m|b_n>` of two orthonormal bases,
//! the crate computes the partial-sum maxima `Omega_k` through projector-sum
//! operator norms, assembles the majorization vector
//! `omega = (Omega_1, Omega_2 - Omega_1, ..., Omega_d - Omega_{d-1}, 0, ...)`
//! and evaluates Schur-concave lower bounds `Phi(omega)` on
//! `Phi(p (x) q)`. A brute-force oracle and a Haar-sampled verifier check the
//! construction independently.
//!
//! ```
//! use uur_core::{fixtures, omega_vector, UncertaintyMeasure};
//!
//! let (omega, _) = omega_vector(&fixtures::hadamard()).unwrap();
//! let h = UncertaintyMeasure::shannon().evaluate(omega.entries());
//! assert!((h - 0.584_692_4).abs() < 1e-6);
//! ```

pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod jpdd;
pub mod linalg;
pub mod majorization;
pub mod measurement;
pub mod omega;
pub mod oracle;
pub mod scan;

pub use bounds::{
    jpdd_bound, mu_bound, verify_uur, BoundReport, PiecewiseBranch, VerificationReport,
};
pub use error::{Error, Result};
pub use jpdd::{Cell, IndexRegion, Partition};
pub use linalg::{ComplexMatrix, StateVector};
pub use majorization::{
    majorizes, measure_value, tensor_distribution, LogBase, MeasureKind, UncertaintyMeasure,
};
pub use measurement::{
    overlap_stats, probabilities, sample_haar_state, Basis, BasisPair, OverlapStats,
    ProbabilityVector,
};
pub use num_complex::Complex64;
pub use omega::{
    build_norm_table, omega_k, omega_partition_value, omega_vector, MajorizationVector, NormTable,
    OmegaTable,
};
pub use oracle::{
    brute_force_omega_k, mixed_state_spot_check, region_max, OracleConfig, OracleReport,
    RegionFamily,
};
