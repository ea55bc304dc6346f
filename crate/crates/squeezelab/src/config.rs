//! Run configurations. Every command is fully described by a [`RunConfig`],
//! which is also what `run --config` reads and what each run echoes back.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use squeezelab_core::gaussian::{MixerVariant, SchemeParams};
use squeezelab_core::metrics::DistanceMeasure;
use squeezelab_core::mixer::MixerConfig;
use squeezelab_core::oscillator::{OscillatorConfig, OscillatorKind};

use crate::error::{CliError, Result};

/// Version of every JSON document written by the CLI.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunConfig {
    Simulate(SimulateConfig),
    Sweep(SweepConfig),
    Mix(MixConfig),
    Scheme(SchemeConfig),
    Surface(SurfaceConfig),
    Fit(FitConfig),
    Spectra(SpectraConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub kind: OscillatorKind,
    #[serde(rename = "N")]
    pub n_pump: f64,
    #[serde(default)]
    pub pump_phase: f64,
    #[serde(default)]
    pub pump_cutoff: Option<usize>,
    /// End of the written trajectory; defaults to twice the squeezing time.
    #[serde(default)]
    pub t_max: Option<f64>,
    pub points: usize,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub kind: OscillatorKind,
    #[serde(rename = "N")]
    pub n_values: Vec<f64>,
    #[serde(default)]
    pub pump_phase: f64,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixConfig {
    pub mixer: MixerConfig,
    /// Coherent amplitude `|α|` on input 1.
    pub alpha: f64,
    /// Squeeze parameter on input 2.
    pub s: f64,
    /// Squeezing phase; `None` aligns it with the measured quadrature.
    #[serde(default)]
    pub theta: Option<f64>,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub dump_state: bool,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    #[serde(rename = "N")]
    pub n_pump: f64,
    pub lambda: f64,
    pub mixer: MixerConfig,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub variant: MixerVariant,
    pub lambda: f64,
    #[serde(rename = "N")]
    pub n_values: Vec<f64>,
    /// Reflectivity `r₂` (beam splitter) or arm phase `φ` (interferometer).
    pub settings: Vec<f64>,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Two-column CSV of `(N, value)` rows.
    pub input: PathBuf,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectraConfig {
    /// Two-column `(omega, value)` CSVs sharing one frequency grid.
    pub squeezed: PathBuf,
    pub intensity: PathBuf,
    #[serde(default)]
    pub unsqueezed: Option<PathBuf>,
    #[serde(default)]
    pub measure: DistanceMeasure,
    pub out_dir: PathBuf,
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::validation(format!("{name} must be finite")))
    }
}

fn non_empty(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(CliError::validation(format!("{name} must not be empty")));
    }
    v.iter().try_for_each(|&x| finite(name, x))
}

impl SimulateConfig {
    pub fn oscillator(&self) -> OscillatorConfig {
        OscillatorConfig {
            kind: self.kind,
            n_pump: self.n_pump,
            pump_phase: self.pump_phase,
            pump_cutoff: self.pump_cutoff,
        }
    }
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::Simulate(_) => "simulate",
            RunConfig::Sweep(_) => "sweep",
            RunConfig::Mix(_) => "mix",
            RunConfig::Scheme(_) => "scheme",
            RunConfig::Surface(_) => "surface",
            RunConfig::Fit(_) => "fit",
            RunConfig::Spectra(_) => "spectra",
        }
    }

    pub fn out_dir(&self) -> &Path {
        match self {
            RunConfig::Simulate(c) => &c.out_dir,
            RunConfig::Sweep(c) => &c.out_dir,
            RunConfig::Mix(c) => &c.out_dir,
            RunConfig::Scheme(c) => &c.out_dir,
            RunConfig::Surface(c) => &c.out_dir,
            RunConfig::Fit(c) => &c.out_dir,
            RunConfig::Spectra(c) => &c.out_dir,
        }
    }

    pub fn set_out_dir(&mut self, dir: PathBuf) {
        let slot = match self {
            RunConfig::Simulate(c) => &mut c.out_dir,
            RunConfig::Sweep(c) => &mut c.out_dir,
            RunConfig::Mix(c) => &mut c.out_dir,
            RunConfig::Scheme(c) => &mut c.out_dir,
            RunConfig::Surface(c) => &mut c.out_dir,
            RunConfig::Fit(c) => &mut c.out_dir,
            RunConfig::Spectra(c) => &mut c.out_dir,
        };
        *slot = dir;
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail these checks
    pub fn validate(&self) -> Result<()> {
        match self {
            RunConfig::Simulate(c) => {
                c.oscillator().validate()?;
                if let Some(t) = c.t_max {
                    if !(t > 0.0) || !t.is_finite() {
                        return Err(CliError::validation("t_max must be finite and > 0"));
                    }
                }
                if c.points < 2 {
                    return Err(CliError::validation("points must be at least 2"));
                }
            }
            RunConfig::Sweep(c) => {
                non_empty("N", &c.n_values)?;
                if c.n_values.len() < 3 {
                    return Err(CliError::validation("a sweep needs at least 3 values of N"));
                }
                for &n in &c.n_values {
                    if !(n > 0.0) {
                        return Err(CliError::validation("sweep values of N must be > 0"));
                    }
                    let mut osc = OscillatorConfig::new(c.kind, n);
                    osc.pump_phase = c.pump_phase;
                    osc.validate()?;
                }
            }
            RunConfig::Mix(c) => {
                c.mixer.validate()?;
                c.mixer.mode_map()?;
                if !(c.alpha >= 0.0) || !c.alpha.is_finite() {
                    return Err(CliError::validation("alpha must be finite and >= 0"));
                }
                if !(c.s >= 0.0) || !c.s.is_finite() {
                    return Err(CliError::validation("s must be finite and >= 0"));
                }
                if let Some(t) = c.theta {
                    finite("theta", t)?;
                }
            }
            RunConfig::Scheme(c) => {
                SchemeParams::new(c.n_pump, c.lambda, c.mixer)?;
            }
            RunConfig::Surface(c) => {
                non_empty("N", &c.n_values)?;
                non_empty("settings", &c.settings)?;
                for &n in &c.n_values {
                    for &x in &c.settings {
                        SchemeParams::new(n, c.lambda, c.variant.mixer(x)?)?;
                    }
                }
            }
            RunConfig::Fit(_) | RunConfig::Spectra(_) => {}
        }
        Ok(())
    }
}
