//! Truncated Fock-space states of up to [`MAX_MODES`] bosonic modes.
//!
//! A [`FockState`] is a dense row-major tensor of amplitudes over the
//! occupation box `0 <= n_k < dims[k]` (the last mode varies fastest).
//! Anything that can hand out amplitudes by occupation implements
//! [`Amplitudes`], which is all the expectation-value machinery needs; the
//! charge-block states of the oscillator module plug in the same way.

mod linear_optics;
mod operator;
mod quadrature;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use crate::{Error, Result, C64};

pub use linear_optics::{apply_beam_splitter, apply_interferometer, apply_mode_map, ModeMap};
pub use operator::{expectation, Ladder, Monomial, Operator};
pub use quadrature::{
    field_moments, quadrature_stats, Field, FieldMoments, QuadratureSpec, QuadratureStats,
};

pub const MAX_MODES: usize = 3;

/// Largest per-mode occupation cutoff the constructors will grow to.
pub const MAX_CUTOFF: usize = 1 << 16;

/// Norm deficit allowed when truncating an analytic state.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;

/// Occupation numbers of every mode of a basis vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupation {
    counts: [u32; MAX_MODES],
    modes: u8,
}

impl Occupation {
    pub fn new(counts: &[u32]) -> Self {
        assert!(
            counts.len() <= MAX_MODES,
            "at most {MAX_MODES} modes are supported"
        );
        let mut c = [0; MAX_MODES];
        c[..counts.len()].copy_from_slice(counts);
        Occupation {
            counts: c,
            modes: counts.len() as u8,
        }
    }

    pub fn zeros(modes: usize) -> Self {
        assert!(
            modes <= MAX_MODES,
            "at most {MAX_MODES} modes are supported"
        );
        Occupation {
            counts: [0; MAX_MODES],
            modes: modes as u8,
        }
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.modes as usize
    }

    #[inline]
    pub fn get(&self, mode: usize) -> u32 {
        self.counts[mode]
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.counts[..self.modes()]
    }

    #[inline]
    pub(crate) fn set(&mut self, mode: usize, n: u32) {
        self.counts[mode] = n;
    }

    pub fn total(&self) -> u64 {
        self.as_slice().iter().map(|&n| n as u64).sum()
    }

    /// Weighted sum `Σ w_k n_k`, the value of a linear conserved charge.
    pub fn charge(&self, weights: &[i64]) -> i64 {
        self.as_slice()
            .iter()
            .zip(weights)
            .map(|(&n, &w)| n as i64 * w)
            .sum()
    }
}

impl fmt::Debug for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

/// Read access to the amplitudes of a state, whatever its storage.
pub trait Amplitudes {
    fn n_modes(&self) -> usize;

    /// Amplitude of a basis vector; zero for anything outside the stored
    /// space.
    fn amplitude(&self, occ: &Occupation) -> C64;

    /// Visit every stored basis vector with a nonzero amplitude.
    fn for_each_nonzero(&self, f: &mut dyn FnMut(&Occupation, C64));

    fn norm_sqr(&self) -> f64 {
        let mut acc = 0.0;
        self.for_each_nonzero(&mut |_, a| acc += a.norm_sqr());
        acc
    }
}

/// Dense truncated multimode state.
#[derive(Clone, PartialEq)]
pub struct FockState {
    dims: Vec<usize>,
    amps: Vec<C64>,
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockState")
            .field("dims", &self.dims)
            .field("norm_sqr", &self.norm_sqr())
            .finish()
    }
}

impl FockState {
    pub fn vacuum(dims: &[usize]) -> Result<Self> {
        check_dims(dims)?;
        let mut amps = vec![C64::new(0.0, 0.0); dims.iter().product()];
        amps[0] = C64::new(1.0, 0.0);
        Ok(FockState {
            dims: dims.to_vec(),
            amps,
        })
    }

    /// Wrap raw amplitudes, which must already be normalized to 1e-9.
    pub fn from_amplitudes(dims: &[usize], amps: Vec<C64>) -> Result<Self> {
        check_dims(dims)?;
        let expected: usize = dims.iter().product();
        if amps.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amps.len(),
            });
        }
        let state = FockState {
            dims: dims.to_vec(),
            amps,
        };
        let n = state.norm_sqr();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(n));
        }
        Ok(state)
    }

    /// Single-mode state from number-basis amplitudes; renormalized.
    pub(crate) fn single_mode(mut amps: Vec<C64>) -> Self {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        FockState {
            dims: vec![amps.len()],
            amps,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn index_of(&self, occ: &Occupation) -> Option<usize> {
        if occ.modes() != self.dims.len() {
            return None;
        }
        let mut idx = 0;
        for (k, &d) in self.dims.iter().enumerate() {
            let n = occ.get(k) as usize;
            if n >= d {
                return None;
            }
            idx = idx * d + n;
        }
        Some(idx)
    }

    pub fn occupation_of(&self, mut idx: usize) -> Occupation {
        let mut occ = Occupation::zeros(self.dims.len());
        for k in (0..self.dims.len()).rev() {
            occ.set(k, (idx % self.dims[k]) as u32);
            idx /= self.dims[k];
        }
        occ
    }

    pub fn iter(&self) -> impl Iterator<Item = (Occupation, C64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, &a)| (self.occupation_of(i), a))
    }

    /// Tensor product `self ⊗ other`; the modes of `other` come last.
    pub fn tensor(&self, other: &FockState) -> Result<FockState> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        check_dims(&dims)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for &a in &self.amps {
            amps.extend(other.amps.iter().map(|&b| a * b));
        }
        Ok(FockState { dims, amps })
    }

    /// Reduced photon-number distribution of one mode.
    pub fn photon_distribution(&self, mode: usize) -> Result<Vec<f64>> {
        self.check_mode(mode)?;
        let mut p = vec![0.0; self.dims[mode]];
        for (i, a) in self.amps.iter().enumerate() {
            p[self.occupation_of(i).get(mode) as usize] += a.norm_sqr();
        }
        Ok(p)
    }

    pub fn mean_photon_number(&self, mode: usize) -> Result<f64> {
        Ok(self
            .photon_distribution(mode)?
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum())
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.dims.len() {
            return Err(Error::ModeOutOfRange {
                mode,
                modes: self.dims.len(),
            });
        }
        Ok(())
    }
}

impl Amplitudes for FockState {
    fn n_modes(&self) -> usize {
        self.dims.len()
    }

    fn amplitude(&self, occ: &Occupation) -> C64 {
        self.index_of(occ)
            .map_or(C64::new(0.0, 0.0), |i| self.amps[i])
    }

    fn for_each_nonzero(&self, f: &mut dyn FnMut(&Occupation, C64)) {
        for (i, &a) in self.amps.iter().enumerate() {
            if a.re != 0.0 || a.im != 0.0 {
                f(&self.occupation_of(i), a);
            }
        }
    }
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.len() > MAX_MODES {
        return Err(Error::invalid(
            "dims",
            "a state needs between 1 and 3 modes",
        ));
    }
    if dims.contains(&0) {
        return Err(Error::invalid(
            "dims",
            "every mode needs at least one level",
        ));
    }
    Ok(())
}

/// Squeezing magnitude `s >= 0` and phase `θ` of `|0, s e^{iθ}>`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqueezeParams {
    pub s: f64,
    pub theta: f64,
}

impl SqueezeParams {
    pub fn new(s: f64, theta: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::invalid(
                "s",
                "squeezing magnitude must be finite and >= 0",
            ));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta", "squeezing phase must be finite"));
        }
        Ok(SqueezeParams {
            s,
            theta: crate::wrap_angle(theta),
        })
    }

    pub fn mean_photons(&self) -> f64 {
        let sh = self.s.sinh();
        sh * sh
    }
}

/// Default occupation cutoff for a state with mean photon number `n`.
pub fn default_cutoff(mean_photons: f64) -> usize {
    (mean_photons + 6.0 * mean_photons.sqrt() + 10.0).ceil() as usize
}

/// Grow the cutoff by doubling until the analytic tail beyond it is below
/// [`TRUNCATION_TOLERANCE`], then return the renormalized truncated state.
fn truncate_analytic(start: usize, amplitudes: impl Fn(usize) -> Vec<C64>) -> Result<FockState> {
    let mut cutoff = start.max(1);
    loop {
        let amps = amplitudes(cutoff);
        let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deficit = (1.0 - kept).max(0.0);
        if deficit < TRUNCATION_TOLERANCE {
            return Ok(FockState::single_mode(amps));
        }
        if cutoff >= MAX_CUTOFF {
            return Err(Error::Truncation { cutoff, deficit });
        }
        cutoff = (cutoff * 2).min(MAX_CUTOFF);
    }
}

/// Coherent state `|α>` truncated at occupation `cutoff` or the default
/// policy `|α|² + 6|α| + 10`, whichever is larger.
pub fn coherent_state(alpha: C64, cutoff: usize) -> Result<FockState> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::invalid("alpha", "amplitude must be finite"));
    }
    let n_mean = alpha.norm_sqr();
    let start = cutoff.max(default_cutoff(n_mean));
    truncate_analytic(start, |cut| coherent_amplitudes(alpha, cut))
}

/// Coherent-state amplitudes for n = 0..=cutoff, evaluated in log space so
/// that large |α| cannot underflow the vacuum term.
pub(crate) fn coherent_amplitudes(alpha: C64, cutoff: usize) -> Vec<C64> {
    let r = alpha.norm();
    let phase = alpha.arg();
    let mut out = Vec::with_capacity(cutoff + 1);
    if r == 0.0 {
        out.push(C64::new(1.0, 0.0));
        out.resize(cutoff + 1, C64::new(0.0, 0.0));
        return out;
    }
    let ln_r = r.ln();
    let mut ln_mag = -0.5 * r * r;
    for n in 0..=cutoff {
        if n > 0 {
            ln_mag += ln_r - 0.5 * (n as f64).ln();
        }
        out.push(C64::from_polar(ln_mag.exp(), phase * n as f64));
    }
    out
}

/// Squeezed vacuum `S(ξ)|0>` with `ξ = s e^{iθ}`.
///
/// Only even occupations are populated; with θ = 0 the quadrature `a + a†`
/// is squeezed to `e^{−2s}`, with θ = π it is `−i(a† − a)`.
pub fn squeezed_vacuum(params: SqueezeParams, cutoff: usize) -> Result<FockState> {
    let start = cutoff.max(default_cutoff(params.mean_photons()));
    truncate_analytic(start, |cut| squeezed_amplitudes(params, cut))
}

pub(crate) fn squeezed_amplitudes(params: SqueezeParams, cutoff: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); cutoff + 1];
    let ratio = -C64::from_polar(params.s.tanh(), params.theta);
    let mut c = C64::new(1.0 / params.s.cosh().sqrt(), 0.0);
    let mut n = 0;
    while n <= cutoff {
        out[n] = c;
        // c_{n+2} / c_n = −e^{iθ} tanh s · sqrt((n+1)/(n+2))
        c *= ratio * ((n as f64 + 1.0) / (n as f64 + 2.0)).sqrt();
        n += 2;
    }
    out
}
