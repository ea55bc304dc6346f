//! Parameters of the two linear mixers that combine a coherent beam with a
//! squeezed vacuum.

use core::f64::consts::PI;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use crate::fock::ModeMap;
use crate::{Error, Result, C64};

const LOSSLESS_TOLERANCE: f64 = 1e-12;

/// Lossless beam splitter
/// `b₁ = e^{iΔ}[t₁a₁ + e^{iψ}r₂a₂]`, `b₂ = e^{iΔ}[t₂a₂ − e^{−iψ}r₁a₁]`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BeamSplitter {
    pub t1: f64,
    pub r1: f64,
    pub t2: f64,
    pub r2: f64,
    pub delta: f64,
    pub psi: f64,
}

impl BeamSplitter {
    /// Symmetric splitter with reflectivity `r₂ = r₁ = r`, `t₁ = t₂ = √(1−r²)`.
    pub fn from_reflectivity(r: f64, delta: f64, psi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::invalid("r2", "reflectivity must lie in [0, 1]"));
        }
        let t = (1.0 - r * r).max(0.0).sqrt();
        let bs = BeamSplitter {
            t1: t,
            r1: r,
            t2: t,
            r2: r,
            delta,
            psi,
        };
        bs.validate()?;
        Ok(bs)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.t1, self.r1, self.t2, self.r2, self.delta, self.psi];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(
                "beam_splitter",
                "coefficients must be finite",
            ));
        }
        if (self.t1 * self.t1 + self.r1 * self.r1 - 1.0).abs() > LOSSLESS_TOLERANCE {
            return Err(Error::invalid("beam_splitter", "t1² + r1² must equal 1"));
        }
        if (self.t2 * self.t2 + self.r2 * self.r2 - 1.0).abs() > LOSSLESS_TOLERANCE {
            return Err(Error::invalid("beam_splitter", "t2² + r2² must equal 1"));
        }
        Ok(())
    }

    /// Heisenberg mode map; fails unless it is unitary to 1e-12.
    pub fn mode_map(&self) -> Result<ModeMap> {
        self.validate()?;
        let g = C64::from_polar(1.0, self.delta);
        let p = C64::from_polar(1.0, self.psi);
        let map = ModeMap([
            [g * self.t1, g * p * self.r2],
            [-g * p.conj() * self.r1, g * self.t2],
        ]);
        map.check_unitary()?;
        Ok(map)
    }

    /// `2Δ + 2ψ`: the squeezing phase `θ = −(2Δ + 2ψ)` minimizes the
    /// output variance.
    pub fn phase_offset(&self) -> f64 {
        2.0 * self.delta + 2.0 * self.psi
    }
}

/// Interferometer with arm phase difference `φ ∈ [0, π]`:
/// `c₁ = e^{iΦ}[−i e^{−iψ} sin(φ/2) a₁ + cos(φ/2) a₂]`,
/// `c₂ = e^{iΦ}[cos(φ/2) a₁ − i e^{iψ} sin(φ/2) a₂]`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interferometer {
    pub phi: f64,
    pub psi: f64,
    pub big_phi: f64,
}

impl Interferometer {
    pub fn new(phi: f64, psi: f64, big_phi: f64) -> Result<Self> {
        let ifm = Interferometer { phi, psi, big_phi };
        ifm.validate()?;
        Ok(ifm)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.psi.is_finite() || !self.big_phi.is_finite() {
            return Err(Error::invalid("interferometer", "phases must be finite"));
        }
        if !(0.0..=PI).contains(&self.phi) {
            return Err(Error::invalid("phi", "relative phase must lie in [0, π]"));
        }
        Ok(())
    }

    pub fn mode_map(&self) -> Result<ModeMap> {
        self.validate()?;
        let (sin, cos) = (self.phi / 2.0).sin_cos();
        let g = C64::from_polar(1.0, self.big_phi);
        let mi = C64::new(0.0, -1.0);
        let p = C64::from_polar(1.0, self.psi);
        let map = ModeMap([
            [g * mi * p.conj() * sin, g * cos],
            [g * cos, g * mi * p * sin],
        ]);
        map.check_unitary()?;
        Ok(map)
    }

    /// `2Φ`: the squeezing phase `θ = −2Φ` minimizes the output variance.
    pub fn phase_offset(&self) -> f64 {
        2.0 * self.big_phi
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "variant", rename_all = "snake_case"))]
pub enum MixerConfig {
    BeamSplitter(BeamSplitter),
    Interferometer(Interferometer),
}

impl MixerConfig {
    pub fn validate(&self) -> Result<()> {
        match self {
            MixerConfig::BeamSplitter(b) => b.validate(),
            MixerConfig::Interferometer(i) => i.validate(),
        }
    }

    pub fn mode_map(&self) -> Result<ModeMap> {
        match self {
            MixerConfig::BeamSplitter(b) => b.mode_map(),
            MixerConfig::Interferometer(i) => i.mode_map(),
        }
    }

    /// Squeezing phase that aligns the squeezed quadrature with `b₁ + b₁†`
    /// (resp. `c₁ + c₁†`).
    pub fn optimal_theta(&self) -> f64 {
        let off = match self {
            MixerConfig::BeamSplitter(b) => b.phase_offset(),
            MixerConfig::Interferometer(i) => i.phase_offset(),
        };
        crate::wrap_angle(-off)
    }
}
