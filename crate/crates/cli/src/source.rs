//! Resolution of `--unitary`, `--preset` and `--theta` into a basis pair.

use std::path::Path;

use uur_core::fixtures;
use uur_core::fixtures::ThetaTemplate;
use uur_core::io::{read_template_file, read_unitary_file};
use uur_core::{BasisPair, Error as CoreError};

use crate::args::GlobalArgs;
use crate::error::CliError;

/// A basis pair with a note of how it was obtained.
#[derive(Clone, Debug)]
pub struct Source {
    pub label: String,
    pub pair: BasisPair,
    /// Unitarity deviation of the input before orthonormalization, if it was applied.
    pub reorthonormalization_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Identity(usize),
    Hadamard,
    Fourier(usize),
    Fig7,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let dim = |a: &str| {
            a.parse::<usize>().ok().filter(|&d| d >= 2).ok_or_else(|| {
                CliError::Usage(format!("preset '{s}': dimension must be an integer >= 2"))
            })
        };
        match (name, arg) {
            ("identity", None) => Ok(Preset::Identity(2)),
            ("identity", Some(a)) => Ok(Preset::Identity(dim(a)?)),
            ("hadamard", None) => Ok(Preset::Hadamard),
            ("fourier", Some(a)) => Ok(Preset::Fourier(dim(a)?)),
            ("fourier", None) => Err(CliError::Usage(
                "preset fourier needs a dimension, e.g. fourier:3".into(),
            )),
            ("fig7", None) => Ok(Preset::Fig7),
            _ => Err(CliError::Usage(format!(
                "unknown preset '{s}' (identity[:d] | hadamard | fourier:d | fig7)"
            ))),
        }
    }
}

/// The pair selected by the global flags.
pub fn resolve(global: &GlobalArgs) -> Result<Source, CliError> {
    if let Some(theta) = global.theta {
        if !theta.is_finite() {
            return Err(CliError::Usage(format!(
                "--theta must be finite, got {theta}"
            )));
        }
    }
    match (&global.unitary, &global.preset) {
        (Some(path), None) => {
            if global.theta.is_some() {
                return Err(CliError::Usage(
                    "--theta only applies to --preset fig7".into(),
                ));
            }
            from_file(path, global.reorthonormalize)
        }
        (None, Some(name)) => {
            let preset = Preset::parse(name)?;
            if global.theta.is_some() && preset != Preset::Fig7 {
                return Err(CliError::Usage(
                    "--theta only applies to --preset fig7".into(),
                ));
            }
            from_preset(&preset, global.theta.unwrap_or(0.0))
        }
        (None, None) => Err(CliError::Usage(
            "one of --unitary or --preset is required".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--unitary and --preset are mutually exclusive".into(),
        )),
    }
}

fn from_file(path: &Path, reorthonormalize: bool) -> Result<Source, CliError> {
    let file = read_unitary_file(path).map_err(|e| CliError::input(path, e))?;
    let loaded = file.into_pair(reorthonormalize).map_err(|e| match e {
        CoreError::NotUnitary { deviation } if !reorthonormalize => CliError::input(
            path,
            format!("{e}; pass --reorthonormalize to accept deviations up to 1e-2 (found {deviation:.3e})"),
        ),
        other => CliError::input(path, other),
    })?;
    Ok(Source {
        label: path.display().to_string(),
        pair: loaded.pair,
        reorthonormalization_deviation: loaded.reorthonormalized.then_some(loaded.deviation),
    })
}

fn from_preset(preset: &Preset, theta: f64) -> Result<Source, CliError> {
    let plain = |label: String, pair: BasisPair| Source {
        label,
        pair,
        reorthonormalization_deviation: None,
    };
    Ok(match *preset {
        Preset::Identity(d) => plain(format!("identity:{d}"), fixtures::identity(d)),
        Preset::Hadamard => plain("hadamard".into(), fixtures::hadamard()),
        Preset::Fourier(d) => plain(format!("fourier:{d}"), fixtures::fourier(d)?),
        Preset::Fig7 => {
            let fx = fixtures::fig7(theta)?;
            Source {
                label: format!("fig7 theta={theta}"),
                pair: fx.pair,
                reorthonormalization_deviation: Some(fx.deviation),
            }
        }
    })
}

/// The theta family used by `scan-theta`.
pub fn resolve_template(
    global: &GlobalArgs,
    template: Option<&Path>,
) -> Result<(String, ThetaTemplate), CliError> {
    if global.unitary.is_some() {
        return Err(CliError::Usage(
            "scan-theta takes --preset fig7 or --unitary-template, not --unitary".into(),
        ));
    }
    if global.theta.is_some() {
        return Err(CliError::Usage(
            "scan-theta sweeps theta; use --from/--to instead of --theta".into(),
        ));
    }
    match (template, &global.preset) {
        (Some(path), None) => {
            let file = read_template_file(path).map_err(|e| CliError::input(path, e))?;
            let t = file.to_template().map_err(|e| CliError::input(path, e))?;
            Ok((path.display().to_string(), t))
        }
        (None, Some(name)) => match Preset::parse(name)? {
            Preset::Fig7 => Ok(("fig7".into(), fixtures::fig7_template())),
            _ => Err(CliError::Usage(format!(
                "preset '{name}' has no theta parameter; scan-theta needs --preset fig7 or --unitary-template"
            ))),
        },
        (None, None) => Err(CliError::Usage(
            "scan-theta needs --preset fig7 or --unitary-template".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--unitary-template and --preset are mutually exclusive".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_names() {
        assert_eq!(Preset::parse("identity").unwrap(), Preset::Identity(2));
        assert_eq!(Preset::parse("identity:4").unwrap(), Preset::Identity(4));
        assert_eq!(Preset::parse("hadamard").unwrap(), Preset::Hadamard);
        assert_eq!(Preset::parse("fourier:3").unwrap(), Preset::Fourier(3));
        assert_eq!(Preset::parse("fig7").unwrap(), Preset::Fig7);
        for bad in [
            "fourier",
            "fourier:1",
            "fourier:x",
            "hadamard:2",
            "pauli",
            "fig7:1",
        ] {
            assert!(Preset::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fig7_records_deviation() {
        let s = from_preset(&Preset::Fig7, 0.5).unwrap();
        assert_eq!(s.pair.dim(), 4);
        assert!(s.reorthonormalization_deviation.unwrap() > 0.0);
    }
}
