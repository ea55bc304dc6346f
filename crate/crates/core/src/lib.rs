//! Numerical core for phase-resolution studies of squeezed light.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It covers:
//!
//! * [`fock`]: truncated multimode Fock states, ladder-operator expressions,
//!   quadratures and linear-optics mode maps applied in the number basis.
//! * [`oscillator`]: lossless degenerate / non-degenerate parametric
//!   oscillators evolved exactly in conserved-charge blocks.
//! * [`gaussian`]: closed-form beam-splitter and interferometer mixing
//!   results and the squeezed-coherent generation scheme built on them.
//! * [`metrics`]: the phase resolution `S = (<Y†Y> / <ΔX²>)^{1/2}`, its
//!   spectral form, and log-log power-law fits.
//!
//! Conventions: ħ = κ = 1, quadratures are normalized so that the vacuum
//! variance is 1, and a squeezed vacuum `|0, s e^{iθ}>` has
//! `<a²> = −e^{iθ} sinh s cosh s`.
#![no_std]
// `!(x >= 0.0)` is how validation rejects NaN along with negatives
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod metrics;
pub mod mixer;
pub mod optimize;
pub mod oscillator;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex amplitude type used throughout the crate.
pub type C64 = Complex64;

/// Map an angle onto `[0, 2π)`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let r = x % core::f64::consts::TAU;
    if r < 0.0 {
        r + core::f64::consts::TAU
    } else {
        r
    }
}
