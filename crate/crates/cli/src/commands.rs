//! Command implementations. Each returns its standard output and exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;
use uur_core::bounds::{verify_uur, BoundReport};
use uur_core::oracle::{EXHAUSTIVE_DIM_CAP, REGION_DIM_CAP};
use uur_core::scan::{scan_theta, to_csv};
use uur_core::{
    brute_force_omega_k, jpdd_bound, omega_vector, overlap_stats, Error as CoreError, LogBase,
    OracleConfig, RegionFamily, UncertaintyMeasure,
};

use crate::args::{FamilyArg, GlobalArgs, MeasureArgs, OracleArgs, ScanArgs, VerifyArgs};
use crate::error::CliError;
use crate::source::{resolve, resolve_template, Source};

/// Text for standard output plus the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn fmt_vec(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.10}")).collect();
    format!("({})", items.join(", "))
}

fn header(out: &mut String, src: &Source) {
    writeln!(out, "pair: {} (d = {})", src.label, src.pair.dim()).unwrap();
    if let Some(dev) = src.reorthonormalization_deviation {
        writeln!(
            out,
            "re-orthonormalized input; deviation before correction: {dev:.6e}"
        )
        .unwrap();
    }
}

fn measure(args: &MeasureArgs) -> Result<UncertaintyMeasure, CliError> {
    let base: LogBase = args.log_base.parse()?;
    Ok(UncertaintyMeasure::parse(&args.measure, base)?)
}

pub fn omega(global: &GlobalArgs) -> Result<Outcome, CliError> {
    let src = resolve(global)?;
    let stats = overlap_stats(&src.pair);
    let (w, table) = omega_vector(&src.pair)?;
    if global.json {
        return Ok(Outcome::ok(to_json(&json!({
            "pair": src.label,
            "dim": src.pair.dim(),
            "reorthonormalization_deviation": src.reorthonormalization_deviation,
            "overlap": stats,
            "omega_table": table,
            "omega": w,
        }))));
    }
    let mut out = String::new();
    header(&mut out, &src);
    writeln!(out, "c = {:.10}   c' = {:.10}", stats.c, stats.c_prime).unwrap();
    writeln!(
        out,
        "{:>3}  {:>12}  {:>12}  partition",
        "k", "Omega_k", "raw"
    )
    .unwrap();
    for k in 0..table.dim {
        writeln!(
            out,
            "{:>3}  {:>12.10}  {:>12.10}  {}",
            k + 1,
            table.omega_k[k],
            table.raw_omega_k[k],
            table.argmax_partition[k]
        )
        .unwrap();
    }
    writeln!(out, "omega = {}", fmt_vec(w.entries())).unwrap();
    for f in &table.findings {
        writeln!(out, "finding: {f}").unwrap();
    }
    Ok(Outcome::ok(out))
}

pub fn bound(global: &GlobalArgs, args: &MeasureArgs) -> Result<Outcome, CliError> {
    let m = measure(args)?;
    let src = resolve(global)?;
    let report = jpdd_bound(&src.pair, &m)?;
    if global.json {
        return Ok(Outcome::ok(to_json(&json!({
            "pair": src.label,
            "dim": src.pair.dim(),
            "reorthonormalization_deviation": src.reorthonormalization_deviation,
            "report": report,
        }))));
    }
    let mut out = String::new();
    header(&mut out, &src);
    write_bound(&mut out, &report);
    Ok(Outcome::ok(out))
}

fn write_bound(out: &mut String, r: &BoundReport) {
    writeln!(out, "measure: {}", r.measure).unwrap();
    writeln!(out, "c = {:.10}", r.c).unwrap();
    if let (Some(branch), Some(value)) = (r.piecewise_branch, r.piecewise_value) {
        writeln!(out, "branch: {}", branch.label()).unwrap();
        writeln!(out, "piecewise bound = {value:.10}").unwrap();
    }
    writeln!(out, "b_mu = {:.10}", r.b_mu).unwrap();
    writeln!(out, "b_jpdd = {:.10}", r.b_jpdd).unwrap();
    writeln!(out, "omega = {}", fmt_vec(r.omega.entries())).unwrap();
    for w in &r.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
}

pub fn verify(global: &GlobalArgs, args: &VerifyArgs) -> Result<Outcome, CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(global.tol >= 0.0 && global.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be a finite non-negative number, got {}",
            global.tol
        )));
    }
    let src = resolve(global)?;
    let report = verify_uur(&src.pair, args.samples, global.seed, global.tol)?;
    let code = if report.is_clean() { 0 } else { 1 };
    if global.json {
        let body = to_json(&json!({
            "pair": src.label,
            "dim": src.pair.dim(),
            "reorthonormalization_deviation": src.reorthonormalization_deviation,
            "report": report,
        }));
        return Ok(Outcome { stdout: body, code });
    }
    let mut out = String::new();
    header(&mut out, &src);
    writeln!(
        out,
        "samples = {}   seed = {}   tol = {:e}",
        report.samples, report.seed, report.tol
    )
    .unwrap();
    writeln!(
        out,
        "majorization violations = {}",
        report.violations_majorization
    )
    .unwrap();
    writeln!(
        out,
        "worst prefix deficit = {:.6e}",
        report.worst_prefix_deficit
    )
    .unwrap();
    writeln!(out, "entropy violations = {}", report.violations_entropy).unwrap();
    writeln!(
        out,
        "smallest entropy slack = {:.6e}",
        report.worst_entropy_gap
    )
    .unwrap();
    if !report.violating_samples.is_empty() {
        writeln!(
            out,
            "violating sample indices: {:?}",
            report.violating_samples
        )
        .unwrap();
    }
    writeln!(
        out,
        "result: {}",
        if code == 0 {
            "no violations"
        } else {
            "VIOLATIONS FOUND"
        }
    )
    .unwrap();
    Ok(Outcome { stdout: out, code })
}

pub fn oracle(global: &GlobalArgs, args: &OracleArgs) -> Result<Outcome, CliError> {
    if args.starts == 0 {
        return Err(CliError::Usage("--starts must be at least 1".into()));
    }
    let src = resolve(global)?;
    let d = src.pair.dim();
    let (family, cap) = match args.family {
        FamilyArg::Exhaustive => (RegionFamily::Exhaustive, EXHAUSTIVE_DIM_CAP),
        FamilyArg::PartitionShaped => (RegionFamily::PartitionShaped, REGION_DIM_CAP),
    };
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=d).collect(),
    };
    let cfg = OracleConfig {
        starts: args.starts,
        seed: global.seed,
        ..OracleConfig::default()
    };
    let mut reports = Vec::with_capacity(ks.len());
    for k in ks {
        let r = brute_force_omega_k(&src.pair, k, family, &cfg).map_err(|e| match e {
            CoreError::DimensionCapExceeded { dim, .. } => CliError::Usage(format!(
                "dimension {dim} exceeds the {} oracle cap of {cap}{}",
                family_name(args.family),
                if args.family == FamilyArg::Exhaustive {
                    format!("; try --family partition-shaped (cap {REGION_DIM_CAP})")
                } else {
                    String::new()
                }
            )),
            CoreError::OutOfRange(msg) => CliError::Usage(format!("--k: {msg}")),
            other => other.into(),
        })?;
        reports.push(r);
    }
    if global.json {
        return Ok(Outcome::ok(to_json(&json!({
            "pair": src.label,
            "dim": d,
            "reorthonormalization_deviation": src.reorthonormalization_deviation,
            "reports": reports,
        }))));
    }
    let mut out = String::new();
    header(&mut out, &src);
    writeln!(
        out,
        "family = {}   starts = {}   seed = {}",
        family_name(args.family),
        args.starts,
        global.seed
    )
    .unwrap();
    for r in &reports {
        writeln!(out, "k = {}", r.k).unwrap();
        writeln!(out, "  formula = {:.10}", r.formula_value).unwrap();
        writeln!(out, "  oracle  = {:.10}", r.oracle_value).unwrap();
        writeln!(out, "  gap (formula - oracle) = {:.3e}", r.gap).unwrap();
        writeln!(out, "  best region = {}", r.best_region).unwrap();
        writeln!(
            out,
            "  best region is partition-shaped = {}",
            r.best_region_is_partition_shaped
        )
        .unwrap();
        writeln!(
            out,
            "  best partition-shaped value = {:.10}",
            r.best_partition_shaped_value
        )
        .unwrap();
        writeln!(
            out,
            "  regions searched = {}   converged = {}",
            r.regions_searched, r.converged
        )
        .unwrap();
        if r.gap < -1e-6 {
            writeln!(
                out,
                "  finding: formula falls below the optimizer by {:.3e}",
                -r.gap
            )
            .unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Exhaustive => "exhaustive",
        FamilyArg::PartitionShaped => "partition-shaped",
    }
}

/// `<out>.meta.json` next to the CSV.
pub fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

pub fn scan(global: &GlobalArgs, args: &ScanArgs) -> Result<Outcome, CliError> {
    let m = measure(&args.measure)?;
    let (label, template) = resolve_template(global, args.unitary_template.as_deref())?;
    let to = args.to.unwrap_or(2.0 * std::f64::consts::PI);
    if !args.from.is_finite() || !to.is_finite() || args.from >= to {
        return Err(CliError::Usage(format!(
            "theta range [{}, {to}) is empty or not finite",
            args.from
        )));
    }
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    let result = scan_theta(&template, args.from, to, args.steps, &m)?;

    fs::write(&args.out, to_csv(&result.rows)).map_err(|e| CliError::output(&args.out, e))?;
    let meta_file = meta_path(&args.out);
    let meta = json!({
        "source": label,
        "from": args.from,
        "to": to,
        "steps": args.steps,
        "measure": m.to_string(),
        "max_reorthonormalization_deviation": result.max_reorthonormalization_deviation,
        "findings": result.findings,
    });
    fs::write(&meta_file, to_json(&meta)).map_err(|e| CliError::output(&meta_file, e))?;

    if global.json {
        return Ok(Outcome::ok(to_json(&json!({
            "csv": args.out.display().to_string(),
            "meta": meta_file.display().to_string(),
            "rows": result.rows.len(),
            "max_reorthonormalization_deviation": result.max_reorthonormalization_deviation,
            "findings": result.findings.len(),
        }))));
    }
    let mut out = String::new();
    writeln!(
        out,
        "wrote {} rows to {}",
        result.rows.len(),
        args.out.display()
    )
    .unwrap();
    writeln!(out, "metadata: {}", meta_file.display()).unwrap();
    writeln!(
        out,
        "max re-orthonormalization deviation = {:.6e}",
        result.max_reorthonormalization_deviation
    )
    .unwrap();
    if !result.findings.is_empty() {
        writeln!(out, "findings: {} (see metadata)", result.findings.len()).unwrap();
    }
    Ok(Outcome::ok(out))
}
