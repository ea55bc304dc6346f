//! Closed-form results for mixing a coherent beam `|α>` (input 1) with a
//! squeezed vacuum `|0, s e^{iθ}>` (input 2) on a beam splitter or an
//! interferometer, and for the scheme that derives both inputs from a single
//! `N`-photon pump.
//!
//! The measured output is `b₁` (`c₁` for the interferometer). Its
//! uncertainty quadrature is `b₁ + b₁†` and its distance intensity is
//! `<b₁†b₁>`. All phase-resolution functions assume the squeezing phase is
//! aligned, i.e. `2Δ + 2ψ + θ = 0` (`2Φ + θ = 0`).

use alloc::vec::Vec;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use crate::fock::SqueezeParams;
use crate::metrics::{phase_resolution, PhaseResolution};
use crate::mixer::{BeamSplitter, Interferometer, MixerConfig};
use crate::{Error, Result};

/// Variance of `b₁ + b₁†` as a function of the total phase `2Δ + 2ψ + θ`:
/// `1 + 2r₂² sinh s [sinh s − cosh s cos(total)]`.
pub fn bs_variance_at(r2: f64, s: f64, total_phase: f64) -> f64 {
    let (sh, ch) = (s.sinh(), s.cosh());
    1.0 + 2.0 * r2 * r2 * sh * (sh - ch * total_phase.cos())
}

pub fn bs_variance(bs: &BeamSplitter, sq: SqueezeParams) -> f64 {
    bs_variance_at(bs.r2, sq.s, bs.phase_offset() + sq.theta)
}

/// Squeezed-quadrature variance `1 − k(1 − e^{−2s})` reached when a
/// fraction `k` of the squeezed vacuum's power reaches the output with the
/// optimal phase.
fn aligned_variance(k: f64, s: f64) -> f64 {
    1.0 - k * (-(-2.0 * s).exp_m1())
}

pub fn bs_phase_resolution(bs: &BeamSplitter, s: f64, alpha_abs: f64) -> Result<PhaseResolution> {
    bs.validate()?;
    let sh = s.sinh();
    let intensity = bs.t1 * bs.t1 * alpha_abs * alpha_abs + bs.r2 * bs.r2 * sh * sh;
    phase_resolution(intensity, aligned_variance(bs.r2 * bs.r2, s))
}

/// Aligned-phase variance of `c₁ + c₁†`: `1 − (1 − e^{−2s}) cos²(φ/2)`.
pub fn in_variance(phi: f64, s: f64) -> f64 {
    let c = (phi / 2.0).cos();
    aligned_variance(c * c, s)
}

/// Variance of `c₁ + c₁†` for arbitrary `Φ` and `θ`.
pub fn in_variance_with_phases(ifm: &Interferometer, sq: SqueezeParams) -> f64 {
    let c = (ifm.phi / 2.0).cos();
    let (sh, ch) = (sq.s.sinh(), sq.s.cosh());
    1.0 + 2.0 * c * c * sh * (sh - ch * (ifm.phase_offset() + sq.theta).cos())
}

pub fn in_phase_resolution(phi: f64, s: f64, alpha_abs: f64) -> Result<PhaseResolution> {
    Interferometer::new(phi, 0.0, 0.0)?;
    let (sin, cos) = (phi / 2.0).sin_cos();
    let sh = s.sinh();
    let intensity = alpha_abs * alpha_abs * sin * sin + sh * sh * cos * cos;
    phase_resolution(intensity, in_variance(phi, s))
}

/// `<b₁†b₁>` (`<c₁†c₁>`) of the analysed output; independent of every phase.
pub fn output_intensity(mixer: &MixerConfig, s: f64, alpha_abs: f64) -> f64 {
    let sh2 = s.sinh() * s.sinh();
    let a2 = alpha_abs * alpha_abs;
    match mixer {
        MixerConfig::BeamSplitter(bs) => bs.t1 * bs.t1 * a2 + bs.r2 * bs.r2 * sh2,
        MixerConfig::Interferometer(ifm) => {
            let (sin, cos) = (ifm.phi / 2.0).sin_cos();
            a2 * sin * sin + sh2 * cos * cos
        }
    }
}

/// Variance of the analysed output's `X = b₁ + b₁†` for any squeezing phase.
pub fn output_variance(mixer: &MixerConfig, sq: SqueezeParams) -> f64 {
    match mixer {
        MixerConfig::BeamSplitter(bs) => bs_variance(bs, sq),
        MixerConfig::Interferometer(ifm) => in_variance_with_phases(ifm, sq),
    }
}

/// Phase resolution of the analysed output without assuming aligned phases.
pub fn mixed_phase_resolution(
    mixer: &MixerConfig,
    sq: SqueezeParams,
    alpha_abs: f64,
) -> Result<PhaseResolution> {
    mixer.validate()?;
    if !(alpha_abs >= 0.0) || !alpha_abs.is_finite() {
        return Err(Error::invalid("alpha", "|α| must be finite and >= 0"));
    }
    phase_resolution(
        output_intensity(mixer, sq.s, alpha_abs),
        output_variance(mixer, sq),
    )
}

/// A pump of `N` photons feeds a parametric oscillator (squeezed vacuum of
/// `(N/2)^{1/2}` photons) and, after down-conversion with efficiency `λ`, a
/// coherent beam of `2Nλ` photons; both meet at `mixer`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeParams {
    pub n_pump: f64,
    pub lambda: f64,
    pub mixer: MixerConfig,
}

impl SchemeParams {
    pub fn new(n_pump: f64, lambda: f64, mixer: MixerConfig) -> Result<Self> {
        let p = SchemeParams {
            n_pump,
            lambda,
            mixer,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_pump >= 1.0) || !self.n_pump.is_finite() {
            return Err(Error::invalid(
                "n_pump",
                "pump photon number must be finite and >= 1",
            ));
        }
        if !(self.lambda > 0.0 && self.lambda <= 1.0) {
            return Err(Error::invalid("lambda", "efficiency must lie in (0, 1]"));
        }
        self.mixer.validate()
    }

    pub fn coherent_photons(&self) -> f64 {
        2.0 * self.n_pump * self.lambda
    }

    /// `N_sq = (N/2)^{1/2}`
    pub fn squeezed_photons(&self) -> f64 {
        (self.n_pump / 2.0).sqrt()
    }

    /// Exact inversion of `sinh² s = N_sq`.
    pub fn squeeze_parameter(&self) -> f64 {
        self.squeezed_photons().sqrt().asinh()
    }

    /// The large-`N` shortcut `s ≈ ¼ ln(N/2)`. Informational only; it
    /// underestimates `s` by `¼ ln 16` asymptotically.
    pub fn squeeze_parameter_log(&self) -> f64 {
        0.25 * (self.n_pump / 2.0).ln()
    }
}

/// Output phase resolution of the scheme, with no asymptotic shortcuts.
pub fn scheme_phase_resolution_exact(params: &SchemeParams) -> Result<PhaseResolution> {
    params.validate()?;
    let s = params.squeeze_parameter();
    let alpha_abs = params.coherent_photons().sqrt();
    match &params.mixer {
        MixerConfig::BeamSplitter(bs) => bs_phase_resolution(bs, s, alpha_abs),
        MixerConfig::Interferometer(ifm) => in_phase_resolution(ifm.phi, s, alpha_abs),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeApprox {
    pub exact: f64,
    /// Large-`N` form keeping the `N^{−1/2}/√8` corrections:
    /// `[2N (λ(1−r²) + r²ε) / (1 − r² + r²ε)]^{1/2}` (beam splitter) or
    /// `[2N (λ sin² + ε cos²) / (sin² + ε cos²)]^{1/2}` (interferometer),
    /// with `ε = N^{−1/2}/√8` and angles at `φ/2`.
    pub asymptotic: f64,
    /// Leading behaviour `(2Nλ)^{1/2}`.
    pub leading: f64,
    pub rel_dev_asymptotic: f64,
    pub rel_dev_leading: f64,
}

pub fn scheme_phase_resolution_approx(params: &SchemeParams) -> Result<SchemeApprox> {
    let exact = scheme_phase_resolution_exact(params)?.s;
    let n = params.n_pump;
    let lambda = params.lambda;
    let eps = 1.0 / (n.sqrt() * 8f64.sqrt());
    let ratio = match &params.mixer {
        MixerConfig::BeamSplitter(bs) => {
            let r2 = bs.r2 * bs.r2;
            (lambda * (1.0 - r2) + r2 * eps) / (1.0 - r2 + r2 * eps)
        }
        MixerConfig::Interferometer(ifm) => {
            let (sin, cos) = (ifm.phi / 2.0).sin_cos();
            let (s2, c2) = (sin * sin, cos * cos);
            (lambda * s2 + eps * c2) / (s2 + eps * c2)
        }
    };
    let asymptotic = (2.0 * n * ratio).sqrt();
    let leading = (2.0 * n * lambda).sqrt();
    Ok(SchemeApprox {
        exact,
        asymptotic,
        leading,
        rel_dev_asymptotic: (asymptotic - exact) / exact,
        rel_dev_leading: (leading - exact) / exact,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MixerVariant {
    BeamSplitter,
    Interferometer,
}

/// Grid for a phase-resolution surface over pump photons and mixer setting
/// (reflectivity `r₂` for the beam splitter, `φ` for the interferometer).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SurfaceGrid {
    pub variant: MixerVariant,
    pub lambda: f64,
    pub n_values: Vec<f64>,
    pub settings: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SurfacePoint {
    pub n: f64,
    pub setting: f64,
    pub s_exact: f64,
    pub s_approx: f64,
    pub rel_dev: f64,
}

impl MixerVariant {
    pub fn mixer(&self, setting: f64) -> Result<MixerConfig> {
        Ok(match self {
            MixerVariant::BeamSplitter => {
                MixerConfig::BeamSplitter(BeamSplitter::from_reflectivity(setting, 0.0, 0.0)?)
            }
            MixerVariant::Interferometer => {
                MixerConfig::Interferometer(Interferometer::new(setting, 0.0, 0.0)?)
            }
        })
    }
}

/// Rows ordered by `N`, then setting.
pub fn scheme_surface(grid: &SurfaceGrid) -> Result<Vec<SurfacePoint>> {
    if grid
        .n_values
        .iter()
        .chain(&grid.settings)
        .any(|v| !v.is_finite())
    {
        return Err(Error::invalid("grid", "grid values must be finite"));
    }
    let mut out = Vec::with_capacity(grid.n_values.len() * grid.settings.len());
    for &n in &grid.n_values {
        for &setting in &grid.settings {
            let params = SchemeParams::new(n, grid.lambda, grid.variant.mixer(setting)?)?;
            let a = scheme_phase_resolution_approx(&params)?;
            out.push(SurfacePoint {
                n,
                setting,
                s_exact: a.exact,
                s_approx: a.asymptotic,
                rel_dev: a.rel_dev_asymptotic,
            });
        }
    }
    Ok(out)
}

/// Squeezed-only limit: `S = sinh(s) e^{s}`, approaching `(2N)^{1/2}` from
/// below as `N_sq` grows.
pub fn squeezed_only_resolution(s: f64) -> f64 {
    s.sinh() * s.exp()
}
