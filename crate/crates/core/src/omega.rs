//! Partial-sum maxima `Omega_k` and the majorization vector built from them.
//!
//! `N(r, s)` is the largest squared operator norm of `P_R + Q_S` over index
//! sets with `|R| = r`, `|S| = s`. A partition `(k_1, ..., k_n)` is valued by
//! the telescoping sum
//!
//! ```text
//! Omega(k_1..k_n) = [ N(1, k_1) + sum_{i=2..n} ( N(i, k_i) - N(i-1, k_i) ) ] / 4
//! ```
//!
//! and `Omega_k` is the best value over partitions of `k` fitting in the box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jpdd::{partitions_of, Partition};
use crate::linalg::{hermitian_max_eigenvalue, projector_sum, EIGEN_TOL};
use crate::measurement::BasisPair;

/// Largest dimension accepted without raising the cap explicitly.
pub const DEFAULT_DIM_CAP: usize = 8;

/// Raw values may drift outside the monotone envelope by this much before the
/// drift is reported.
pub const FINDING_TOL: f64 = 1e-6;

/// Memoized `N(r, s)` for `0 <= r, s <= d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormTable {
    dim: usize,
    values: Vec<f64>,
    argmax: Vec<(Vec<usize>, Vec<usize>)>,
}

impl NormTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N(r, s)`.
    pub fn value(&self, r: usize, s: usize) -> f64 {
        assert!(
            r <= self.dim && s <= self.dim,
            "({r}, {s}) outside table of dim {}",
            self.dim
        );
        self.values[r * (self.dim + 1) + s]
    }

    /// Index sets `(R, S)` (0-based) attaining `N(r, s)`, first found in colex order.
    pub fn argmax(&self, r: usize, s: usize) -> (&[usize], &[usize]) {
        let (rows, cols) = &self.argmax[r * (self.dim + 1) + s];
        (rows, cols)
    }
}

/// Subsets of `{0..dim}` grouped by size; each group is in colexicographic order.
fn subsets_by_size(dim: usize) -> Vec<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new(); dim + 1];
    for mask in 0u32..(1u32 << dim) {
        let set: Vec<usize> = (0..dim).filter(|&i| mask & (1 << i) != 0).collect();
        groups[set.len()].push(set);
    }
    groups
}

pub fn build_norm_table(pair: &BasisPair) -> Result<NormTable> {
    build_norm_table_with_cap(pair, DEFAULT_DIM_CAP)
}

/// Enumerates every `(R, S)` pair once; cost is `4^d` small eigen-solves.
pub fn build_norm_table_with_cap(pair: &BasisPair, cap: usize) -> Result<NormTable> {
    let d = pair.dim();
    if d > cap || d > 16 {
        return Err(Error::DimensionCapExceeded {
            dim: d,
            cap: cap.min(16),
        });
    }
    let subsets = subsets_by_size(d);
    let mut values = vec![0.0; (d + 1) * (d + 1)];
    let mut argmax = vec![(Vec::new(), Vec::new()); (d + 1) * (d + 1)];
    for r in 0..=d {
        for s in 0..=d {
            let mut best = f64::NEG_INFINITY;
            let mut best_sets = (Vec::new(), Vec::new());
            for rows in &subsets[r] {
                for cols in &subsets[s] {
                    let m = projector_sum(pair, rows, cols)?;
                    let lmax = hermitian_max_eigenvalue(&m, EIGEN_TOL)?;
                    let v = lmax * lmax;
                    if v > best {
                        best = v;
                        best_sets = (rows.clone(), cols.clone());
                    }
                }
            }
            values[r * (d + 1) + s] = best;
            argmax[r * (d + 1) + s] = best_sets;
        }
    }
    Ok(NormTable {
        dim: d,
        values,
        argmax,
    })
}

/// Telescoping value of one partition.
pub fn omega_partition_value(p: &Partition, table: &NormTable) -> Result<f64> {
    if !p.fits(table.dim()) {
        return Err(Error::InvalidPartition(format!(
            "{p} does not fit a {0}x{0} box",
            table.dim()
        )));
    }
    let parts = p.parts();
    let mut total = table.value(1, parts[0]);
    for (i, &k) in parts.iter().enumerate().skip(1) {
        // rows are 1-based in N(i, k_i): row index i here is the (i+1)-th row
        total += table.value(i + 1, k) - table.value(i, k);
    }
    Ok(total / 4.0)
}

/// Best partition value for `k` boxes, with the first maximizing partition.
pub fn omega_k(k: usize, table: &NormTable) -> Result<(f64, Partition)> {
    let d = table.dim();
    if k < 1 || k > d {
        return Err(Error::OutOfRange(format!("k = {k} outside [1, {d}]")));
    }
    let mut best: Option<(f64, Partition)> = None;
    for p in partitions_of(k, d)? {
        let v = omega_partition_value(&p, table)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, p));
        }
    }
    Ok(best.expect("at least one partition"))
}

/// `Omega_1 .. Omega_d` together with per-partition values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaTable {
    pub dim: usize,
    /// Running maximum of the raw values, clamped to `[0, 1]`.
    pub omega_k: Vec<f64>,
    /// Maxima over partitions before the envelope.
    pub raw_omega_k: Vec<f64>,
    pub argmax_partition: Vec<Partition>,
    pub per_partition: Vec<(Partition, f64)>,
    /// Envelope corrections larger than [`FINDING_TOL`].
    pub findings: Vec<String>,
}

/// Length `d^2`: first differences of the partial sums, then zeros.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVector {
    entries: Vec<f64>,
}

impl MajorizationVector {
    /// `(O_1, O_2 - O_1, ..., O_d - O_{d-1}, 0, ..., 0)` for partial sums `O`.
    pub fn from_partial_sums(partial: &[f64]) -> Self {
        let d = partial.len();
        let mut entries = vec![0.0; d * d];
        let mut prev = 0.0;
        for (slot, &o) in entries.iter_mut().zip(partial) {
            *slot = o - prev;
            prev = o;
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}

pub fn omega_table(table: &NormTable) -> Result<OmegaTable> {
    let d = table.dim();
    let mut per_partition = Vec::new();
    let mut raw = Vec::with_capacity(d);
    let mut argmax = Vec::with_capacity(d);
    for k in 1..=d {
        for p in partitions_of(k, d)? {
            let v = omega_partition_value(&p, table)?;
            per_partition.push((p, v));
        }
        let (v, p) = omega_k(k, table)?;
        raw.push(v);
        argmax.push(p);
    }

    let mut findings = Vec::new();
    let mut omega = Vec::with_capacity(d);
    let mut running = 0.0_f64;
    for (i, &v) in raw.iter().enumerate() {
        let k = i + 1;
        if v < running - FINDING_TOL {
            findings.push(format!(
                "Omega_{k} = {v:.9} drops below Omega_{} = {running:.9}; envelope applied",
                k - 1
            ));
        }
        if v > 1.0 + FINDING_TOL {
            findings.push(format!("Omega_{k} = {v:.9} exceeds 1; clamped"));
        }
        if v < -FINDING_TOL {
            findings.push(format!("Omega_{k} = {v:.9} is negative; clamped"));
        }
        running = running.max(v);
        omega.push(running.clamp(0.0, 1.0));
    }

    Ok(OmegaTable {
        dim: d,
        omega_k: omega,
        raw_omega_k: raw,
        argmax_partition: argmax,
        per_partition,
        findings,
    })
}

pub fn omega_vector(pair: &BasisPair) -> Result<(MajorizationVector, OmegaTable)> {
    let table = build_norm_table(pair)?;
    omega_vector_from_table(&table)
}

pub fn omega_vector_from_table(table: &NormTable) -> Result<(MajorizationVector, OmegaTable)> {
    let omega = omega_table(table)?;
    Ok((MajorizationVector::from_partial_sums(&omega.omega_k), omega))
}
