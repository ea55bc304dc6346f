use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use super::FockState;
use crate::mixer::{BeamSplitter, Interferometer};
use crate::{Error, Result, C64};

/// Tolerance on `M M† = 1` for a mode map.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Heisenberg-picture two-mode map `b_i = Σ_j M_ij a_j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeMap(pub [[C64; 2]; 2]);

impl ModeMap {
    /// Largest entry of `|M M† − 1|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let m = &self.0;
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for k in 0..2 {
                let dot = m[i][0] * m[k][0].conj() + m[i][1] * m[k][1].conj();
                let target = if i == k { 1.0 } else { 0.0 };
                dev = dev.max((dot - target).norm());
            }
        }
        dev
    }

    pub fn check_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > UNITARITY_TOLERANCE || deviation.is_nan() {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(())
    }
}

/// Schrödinger-picture action of a linear two-mode map on a number-basis
/// state.
///
/// The output modes are sized to hold every photon of the input, so the
/// result is exact: each output mode has dimension `d₁ + d₂ − 1`.
///
/// With `U a_j† U† = Σ_i M_ij a_i†`, every image `U|n₁,n₂>` is built one
/// photon at a time from `U|n₁−1,n₂>` (or `U|0,n₂−1>`), which only ever
/// multiplies by `√n`-sized factors and stays stable at large photon numbers.
pub fn apply_mode_map(state: &FockState, map: &ModeMap) -> Result<FockState> {
    if state.dims().len() != 2 {
        return Err(Error::invalid("state", "a two-mode state is required"));
    }
    map.check_unitary()?;
    let [d1, d2] = [state.dims()[0], state.dims()[1]];
    let n_max = (d1 - 1) + (d2 - 1);
    let dim = n_max + 1;
    let mut out = vec![C64::new(0.0, 0.0); dim * dim];
    let m = &map.0;

    // images[n1][m1]: component of U|n1, n−n1> on |m1, n−m1>
    let mut images: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    for n in 0..=n_max {
        if n > 0 {
            let mut next = Vec::with_capacity(n + 1);
            // U|0,n> = B₂† U|0,n−1> / √n
            next.push(raise(&images[0], n - 1, m[0][1], m[1][1], n));
            // U|n1,n−n1> = B₁† U|n1−1,n−n1> / √n1
            for n1 in 1..=n {
                next.push(raise(&images[n1 - 1], n - 1, m[0][0], m[1][0], n1));
            }
            images = next;
        }
        #[allow(clippy::needless_range_loop)] // n1 is also the occupation
        for n1 in n.saturating_sub(d2 - 1)..=n.min(d1 - 1) {
            let n2 = n - n1;
            let amp = state.amplitudes()[n1 * d2 + n2];
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            for (m1, &u) in images[n1].iter().enumerate() {
                out[m1 * dim + (n - m1)] += u * amp;
            }
        }
    }
    Ok(FockState {
        dims: vec![dim, dim],
        amps: out,
    })
}

/// `(c₁ a₁† + c₂ a₂†) v / √k` for `v` in the `n`-photon sector, indexed by
/// the mode-1 occupation.
fn raise(v: &[C64], n: usize, c1: C64, c2: C64, k: usize) -> Vec<C64> {
    let inv = 1.0 / (k as f64).sqrt();
    let (c1, c2) = (c1 * inv, c2 * inv);
    let mut out = vec![C64::new(0.0, 0.0); n + 2];
    for (m1, &x) in v.iter().enumerate() {
        let m2 = n - m1;
        out[m1 + 1] += c1 * x * ((m1 + 1) as f64).sqrt();
        out[m1] += c2 * x * ((m2 + 1) as f64).sqrt();
    }
    out
}

pub fn apply_beam_splitter(state: &FockState, cfg: &BeamSplitter) -> Result<FockState> {
    apply_mode_map(state, &cfg.mode_map()?)
}

pub fn apply_interferometer(state: &FockState, cfg: &Interferometer) -> Result<FockState> {
    apply_mode_map(state, &cfg.mode_map()?)
}
