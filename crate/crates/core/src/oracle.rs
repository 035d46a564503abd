//! Brute-force evaluation of the partial-sum maxima.
//!
//! For a fixed region `I` the objective `f(psi) = sum_{(m,n) in I} p_m q_n`
//! is a quartic on the unit sphere. Stationary points satisfy
//! `M(psi) psi = f psi` with
//! `M(psi) = 1/2 sum_{(m,n) in I} (q_n |a_m><a_m| + p_m |b_n><b_n|)`,
//! so each start is refined by repeatedly jumping to the top eigenvector of
//! `M(psi)`. Results are high-confidence heuristics, not certificates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jpdd::{Cell, IndexRegion};
use crate::linalg::{hermitian_eigen, ComplexMatrix, StateVector, EIGEN_TOL};
use crate::measurement::{a_weights, b_weights, derive_seed, sample_haar_state, BasisPair};
use crate::omega::{build_norm_table, omega_k};

/// Largest dimension for single-region optimization.
pub const REGION_DIM_CAP: usize = 5;
/// Largest dimension for exhaustive enumeration of all k-cell regions.
pub const EXHAUSTIVE_DIM_CAP: usize = 3;
/// Largest dimension for mixed-state spot checks.
pub const MIXED_DIM_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub starts: usize,
    pub seed: u64,
    /// Stop a start once `|delta f|` falls below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            seed: 1,
            tol: 1e-10,
            max_iter: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionOptimum {
    pub value: f64,
    pub state: StateVector,
    /// The best start met the tolerance before the iteration cap.
    pub converged: bool,
}

fn region_value(region: &IndexRegion, p: &[f64], q: &[f64]) -> f64 {
    region.cells().map(|c| p[c.row] * q[c.col]).sum()
}

fn check_region(pair: &BasisPair, region: &IndexRegion) -> Result<()> {
    if !region.fits(pair.dim()) {
        return Err(Error::InvalidParameter(format!(
            "region {region} does not fit dimension {}",
            pair.dim()
        )));
    }
    Ok(())
}

/// `f` at a given state.
pub fn region_objective(pair: &BasisPair, region: &IndexRegion, psi: &StateVector) -> Result<f64> {
    check_region(pair, region)?;
    if psi.dim() != pair.dim() {
        return Err(Error::DimensionMismatch {
            expected: pair.dim(),
            found: psi.dim(),
        });
    }
    let p = a_weights(psi.amplitudes());
    let q = b_weights(pair.overlap_unitary(), psi.amplitudes());
    Ok(region_value(region, &p, &q))
}

fn ascent_matrix(pair: &BasisPair, region: &IndexRegion, p: &[f64], q: &[f64]) -> ComplexMatrix {
    let d = pair.dim();
    let mut m = ComplexMatrix::zeros(d, d);
    let mut row_weight = vec![0.0; d];
    let mut col_weight = vec![0.0; d];
    for Cell { row, col } in region.cells() {
        row_weight[row] += 0.5 * q[col];
        col_weight[col] += 0.5 * p[row];
    }
    for (i, &w) in row_weight.iter().enumerate() {
        m[(i, i)] += Complex64::new(w, 0.0);
    }
    for (n, &w) in col_weight.iter().enumerate() {
        if w != 0.0 {
            m.add_outer(&pair.b_vector(n), w);
        }
    }
    m
}

fn refine(
    pair: &BasisPair,
    region: &IndexRegion,
    start: StateVector,
    cfg: &OracleConfig,
) -> Result<(f64, Vec<Complex64>, bool)> {
    let u = pair.overlap_unitary();
    let mut psi = start.amplitudes().to_vec();
    let mut p = a_weights(&psi);
    let mut q = b_weights(u, &psi);
    let mut f = region_value(region, &p, &q);
    let (mut best_f, mut best_psi) = (f, psi.clone());
    for _ in 0..cfg.max_iter {
        let m = ascent_matrix(pair, region, &p, &q);
        psi = hermitian_eigen(&m, EIGEN_TOL)?.top_vector();
        p = a_weights(&psi);
        q = b_weights(u, &psi);
        let next = region_value(region, &p, &q);
        if next > best_f {
            best_f = next;
            best_psi.clone_from(&psi);
        }
        let delta = (next - f).abs();
        f = next;
        if delta < cfg.tol {
            return Ok((best_f, best_psi, true));
        }
    }
    Ok((best_f, best_psi, false))
}

/// Multi-start maximum of `f` over pure states.
pub fn region_max(
    pair: &BasisPair,
    region: &IndexRegion,
    cfg: &OracleConfig,
) -> Result<RegionOptimum> {
    let d = pair.dim();
    if d > REGION_DIM_CAP {
        return Err(Error::DimensionCapExceeded {
            dim: d,
            cap: REGION_DIM_CAP,
        });
    }
    if cfg.starts == 0 {
        return Err(Error::InvalidParameter(
            "at least one start is required".into(),
        ));
    }
    check_region(pair, region)?;
    let mut best: Option<(f64, Vec<Complex64>, bool)> = None;
    for i in 0..cfg.starts {
        let start = sample_haar_state(d, derive_seed(cfg.seed, i as u64));
        let candidate = refine(pair, region, start, cfg)?;
        if best.as_ref().is_none_or(|b| candidate.0 > b.0) {
            best = Some(candidate);
        }
    }
    let (value, psi, converged) = best.expect("starts >= 1");
    Ok(RegionOptimum {
        value,
        state: StateVector::normalized(psi)?,
        converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionFamily {
    /// Every k-subset of the d x d grid.
    Exhaustive,
    /// Only regions that are Young diagrams after relabeling rows and columns.
    PartitionShaped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub k: usize,
    pub family: RegionFamily,
    pub oracle_value: f64,
    /// Raw best partition value of the telescoping formula.
    pub formula_value: f64,
    /// `formula_value - oracle_value`, sign preserved.
    pub gap: f64,
    pub best_region: IndexRegion,
    pub best_region_is_partition_shaped: bool,
    /// Best value among partition-shaped regions of the family.
    pub best_partition_shaped_value: f64,
    pub regions_searched: usize,
    pub starts_used: usize,
    /// Every region's best start converged.
    pub converged: bool,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=(n - (k - cur.len())) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

/// All regions of `k` cells in the d x d grid belonging to `family`.
pub fn enumerate_regions(dim: usize, k: usize, family: RegionFamily) -> Vec<IndexRegion> {
    k_subsets(dim * dim, k)
        .into_iter()
        .map(|s| {
            IndexRegion::new(s.into_iter().map(|i| Cell::new(i / dim, i % dim)))
                .expect("k >= 1 cells")
        })
        .filter(|r| family == RegionFamily::Exhaustive || r.is_partition_shaped())
        .collect()
}

/// Maximizes over the region family and compares with the formula value.
pub fn brute_force_omega_k(
    pair: &BasisPair,
    k: usize,
    family: RegionFamily,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let d = pair.dim();
    let cap = match family {
        RegionFamily::Exhaustive => EXHAUSTIVE_DIM_CAP,
        RegionFamily::PartitionShaped => REGION_DIM_CAP,
    };
    if d > cap {
        return Err(Error::DimensionCapExceeded { dim: d, cap });
    }
    if k < 1 || k > d {
        return Err(Error::OutOfRange(format!("k = {k} outside [1, {d}]")));
    }
    let table = build_norm_table(pair)?;
    let (formula_value, _) = omega_k(k, &table)?;

    let regions = enumerate_regions(d, k, family);
    let mut best: Option<(f64, IndexRegion)> = None;
    let mut best_shaped: Option<(f64, IndexRegion)> = None;
    let mut converged = true;
    for region in &regions {
        let opt = region_max(pair, region, cfg)?;
        converged &= opt.converged;
        if best.as_ref().is_none_or(|b| opt.value > b.0) {
            best = Some((opt.value, region.clone()));
        }
        if region.is_partition_shaped() && best_shaped.as_ref().is_none_or(|b| opt.value > b.0) {
            best_shaped = Some((opt.value, region.clone()));
        }
    }
    let (oracle_value, mut best_region) = best.expect("at least one region");
    let (shaped_value, shaped_region) = best_shaped.expect("row regions are partition-shaped");
    // report a partition-shaped maximizer when it ties with the overall best
    if shaped_value >= oracle_value - 1e-9 {
        best_region = shaped_region;
    }
    Ok(OracleReport {
        k,
        family,
        oracle_value,
        formula_value,
        gap: formula_value - oracle_value,
        best_region_is_partition_shaped: best_region.is_partition_shaped(),
        best_region,
        best_partition_shaped_value: shaped_value,
        regions_searched: regions.len(),
        starts_used: cfg.starts,
        converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub max_value: f64,
    /// Set when no trials were run; `max_value` is then 0.
    pub empty_trials: bool,
}

/// Maximum of `f` over random convex mixtures of `d` Haar-random pure states.
pub fn mixed_state_spot_check(
    pair: &BasisPair,
    region: &IndexRegion,
    trials: usize,
    seed: u64,
) -> Result<SpotCheck> {
    let d = pair.dim();
    if d > MIXED_DIM_CAP {
        return Err(Error::DimensionCapExceeded {
            dim: d,
            cap: MIXED_DIM_CAP,
        });
    }
    check_region(pair, region)?;
    if trials == 0 {
        return Ok(SpotCheck {
            max_value: 0.0,
            empty_trials: true,
        });
    }
    let u = pair.overlap_unitary();
    let mut best = f64::NEG_INFINITY;
    for t in 0..trials {
        let trial_seed = derive_seed(seed, t as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let mut weights: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);

        let mut p = vec![0.0; d];
        let mut q = vec![0.0; d];
        for (j, &w) in weights.iter().enumerate() {
            let psi = sample_haar_state(d, derive_seed(trial_seed, j as u64 + 1));
            let pj = a_weights(psi.amplitudes());
            let qj = b_weights(u, psi.amplitudes());
            for i in 0..d {
                p[i] += w * pj[i];
                q[i] += w * qj[i];
            }
        }
        best = best.max(region_value(region, &p, &q));
    }
    Ok(SpotCheck {
        max_value: best,
        empty_trials: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const HADAMARD_OMEGA1: f64 = 0.728_553_390_593_273_8;

    fn single(r: usize, c: usize) -> IndexRegion {
        IndexRegion::new([Cell::new(r, c)]).unwrap()
    }

    #[test]
    fn single_cell_hadamard() {
        let opt = region_max(
            &fixtures::hadamard(),
            &single(0, 0),
            &OracleConfig::default(),
        )
        .unwrap();
        assert!((opt.value - HADAMARD_OMEGA1).abs() < 1e-6, "{}", opt.value);
    }

    #[test]
    fn full_grid_is_one() {
        let pair = crate::measurement::random_pair(3, 4);
        let cfg = OracleConfig {
            starts: 4,
            ..Default::default()
        };
        let opt = region_max(&pair, &IndexRegion::full(3), &cfg).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_bases_single_cell() {
        let opt = region_max(
            &fixtures::identity(2),
            &single(0, 0),
            &OracleConfig::default(),
        )
        .unwrap();
        assert!((opt.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn caps() {
        let pair = fixtures::fourier(6).unwrap();
        assert!(matches!(
            region_max(&pair, &single(0, 0), &OracleConfig::default()),
            Err(Error::DimensionCapExceeded { dim: 6, cap: 5 })
        ));
        let pair4 = fixtures::fourier(4).unwrap();
        assert!(matches!(
            brute_force_omega_k(
                &pair4,
                2,
                RegionFamily::Exhaustive,
                &OracleConfig::default()
            ),
            Err(Error::DimensionCapExceeded { dim: 4, cap: 3 })
        ));
        let cfg = OracleConfig {
            starts: 0,
            ..Default::default()
        };
        assert!(region_max(&pair4, &single(0, 0), &cfg).is_err());
        assert!(region_max(&pair4, &single(4, 0), &OracleConfig::default()).is_err());
    }

    #[test]
    fn hadamard_brute_force() {
        let cfg = OracleConfig::default();
        let r1 =
            brute_force_omega_k(&fixtures::hadamard(), 1, RegionFamily::Exhaustive, &cfg).unwrap();
        assert!(r1.gap.abs() < 1e-6);
        assert!((r1.oracle_value - HADAMARD_OMEGA1).abs() < 1e-6);
        let r2 =
            brute_force_omega_k(&fixtures::hadamard(), 2, RegionFamily::Exhaustive, &cfg).unwrap();
        assert!((r2.oracle_value - 1.0).abs() < 1e-6);
        assert!(r2.gap.abs() < 1e-6);
        assert!(r2.best_region_is_partition_shaped);
        assert_eq!(r2.regions_searched, 6);
    }

    #[test]
    fn row_region_reaches_one() {
        let pair = crate::measurement::random_pair(4, 2);
        let cfg = OracleConfig {
            starts: 8,
            ..Default::default()
        };
        let r = brute_force_omega_k(&pair, 4, RegionFamily::PartitionShaped, &cfg).unwrap();
        assert!((r.oracle_value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn region_enumeration_counts() {
        assert_eq!(enumerate_regions(3, 3, RegionFamily::Exhaustive).len(), 84);
        // 2x2 grid, 2 cells: the two diagonals are not partition-shaped
        assert_eq!(
            enumerate_regions(2, 2, RegionFamily::PartitionShaped).len(),
            4
        );
    }

    #[test]
    fn spot_checks() {
        let had = fixtures::hadamard();
        let empty = mixed_state_spot_check(&had, &single(0, 0), 0, 1).unwrap();
        assert!(empty.empty_trials);
        assert_eq!(empty.max_value, 0.0);
        let s = mixed_state_spot_check(&had, &single(0, 0), 10_000, 3).unwrap();
        assert!(s.max_value <= HADAMARD_OMEGA1 + 1e-6);
        let id = mixed_state_spot_check(&fixtures::identity(2), &single(0, 0), 1000, 3).unwrap();
        assert!(id.max_value <= 1.0);
        assert!(
            mixed_state_spot_check(&fixtures::fourier(5).unwrap(), &single(0, 0), 1, 1).is_err()
        );
    }
}
