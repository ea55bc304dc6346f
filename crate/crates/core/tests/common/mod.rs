//! Dense full-tensor-space reference propagation, independent of the block
//! machinery.

#![allow(dead_code)]

use squeezelab_core::fock::{FockState, Occupation, Operator};
use squeezelab_core::oscillator::OscillatorKind;
use squeezelab_core::C64;

/// An operator projected onto a dense box, as (row, col, value) triples.
pub struct DenseOperator {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
    /// Max absolute row sum, an upper bound on the operator norm.
    pub norm_bound: f64,
}

impl DenseOperator {
    pub fn new(dims: &[usize], op: &Operator) -> Self {
        let index = FockState::vacuum(dims).unwrap();
        let dim = index.amplitudes().len();
        let mut entries = Vec::new();
        let mut row_sums = vec![0.0; dim];
        for col in 0..dim {
            let occ = index.occupation_of(col);
            for term in op.terms() {
                if let Some((img, c)) = term.apply(&occ) {
                    if let Some(row) = index.index_of(&img) {
                        entries.push((row, col, c));
                        row_sums[row] += c.norm();
                    }
                }
            }
        }
        let norm_bound = row_sums.iter().cloned().fold(0.0, f64::max);
        DenseOperator {
            dim,
            entries,
            norm_bound,
        }
    }

    pub fn apply(&self, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for &(r, c, v) in &self.entries {
            out[r] += v * psi[c];
        }
        out
    }

    /// `exp(z·K)|ψ>` by Taylor series over sub-steps with `|z|·‖K‖ ≤ 1`.
    pub fn exp_apply(&self, z: C64, psi: &[C64]) -> Vec<C64> {
        let steps = (z.norm() * self.norm_bound).ceil().max(1.0) as usize;
        let dz = z / steps as f64;
        let mut state = psi.to_vec();
        for _ in 0..steps {
            let mut term = state.clone();
            let mut sum = state.clone();
            for k in 1..200 {
                term = self.apply(&term);
                let f = dz / k as f64;
                let mut size = 0.0;
                for t in term.iter_mut() {
                    *t *= f;
                    size += t.norm_sqr();
                }
                for (s, t) in sum.iter_mut().zip(&term) {
                    *s += t;
                }
                if size < 1e-36 {
                    break;
                }
            }
            state = sum;
        }
        state
    }

    /// `e^{−iHt}|ψ>`.
    pub fn evolve(&self, psi: &[C64], t: f64) -> Vec<C64> {
        self.exp_apply(C64::new(0.0, -t), psi)
    }
}

/// Coherent amplitudes `c_0..=c_cutoff`, renormalized, computed directly
/// from the Poisson weights.
pub fn coherent_reference(alpha: C64, cutoff: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..=cutoff {
        if n > 0 {
            c = c * alpha / (n as f64).sqrt();
        }
        out.push(c);
    }
    let norm = out.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    out.iter().map(|a| a / norm).collect()
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Box that holds every state reachable from a pump of at most `cutoff`
/// photons.
pub fn oscillator_box(kind: OscillatorKind, cutoff: usize) -> Vec<usize> {
    match kind {
        OscillatorKind::Degenerate => vec![2 * cutoff + 1, cutoff + 1],
        OscillatorKind::Nondegenerate => vec![cutoff + 1; 3],
    }
}

/// Dense evolution of the oscillator from a coherent pump, at each of the
/// ascending `times`.
pub fn dense_oscillator(
    kind: OscillatorKind,
    n_pump: f64,
    cutoff: usize,
    times: &[f64],
) -> (Vec<usize>, Vec<Vec<C64>>) {
    let dims = oscillator_box(kind, cutoff);
    let h = DenseOperator::new(&dims, &kind.hamiltonian());
    let index = FockState::vacuum(&dims).unwrap();
    let mut psi = vec![C64::new(0.0, 0.0); h.dim];
    for (k, c) in coherent_reference(C64::new(n_pump.sqrt(), 0.0), cutoff)
        .into_iter()
        .enumerate()
    {
        let mut counts = vec![0u32; dims.len()];
        counts[kind.pump_mode()] = k as u32;
        psi[index.index_of(&Occupation::new(&counts)).unwrap()] = c;
    }
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        psi = h.evolve(&psi, t - now);
        now = t;
        out.push(psi.clone());
    }
    (dims, out)
}
