//! Lossless parametric oscillators with a quantized pump.
//!
//! The pump starts in a coherent state with `N` mean photons and the
//! sub-harmonic modes in vacuum. Both Hamiltonians conserve a photon-number
//! charge, so the reachable space splits into small blocks (one per initial
//! pump occupation) that are diagonalized once and then propagated exactly
//! to any time. Units: `ħ = κ = 1`.

mod blocks;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

pub use blocks::{
    Block, BlockHamiltonian, BlockLayout, BlockPropagator, BlockState, SparseOperator,
};

use crate::fock::{
    coherent_amplitudes, default_cutoff, Field, FieldMoments, Occupation, Operator, MAX_CUTOFF,
    TRUNCATION_TOLERANCE,
};
use crate::optimize::golden_section;
use crate::{Error, Result, C64};

/// Largest tolerated `|H − H†|` entry of an assembled block.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// Points in the coarse time grid of the optimum search.
pub const SEARCH_POINTS: usize = 200;

const MAX_BRACKET_DOUBLINGS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OscillatorKind {
    /// Modes `[a₁, b]`, `H = (i/2)(b a₁†² − b† a₁²)`.
    Degenerate,
    /// Modes `[a₂, a₃, b]`, `H = i(b a₂†a₃† − b† a₂a₃)`.
    Nondegenerate,
}

impl OscillatorKind {
    pub fn modes(self) -> usize {
        match self {
            OscillatorKind::Degenerate => 2,
            OscillatorKind::Nondegenerate => 3,
        }
    }

    pub fn pump_mode(self) -> usize {
        self.modes() - 1
    }

    /// Field whose quadratures carry the squeezing: `a₁`, or `a₊` for the
    /// signal/idler pair.
    pub fn field(self) -> Field {
        match self {
            OscillatorKind::Degenerate => Field::Mode(0),
            OscillatorKind::Nondegenerate => Field::Plus(0, 1),
        }
    }

    pub fn hamiltonian(self) -> Operator {
        let b = self.pump_mode();
        match self {
            OscillatorKind::Degenerate => {
                let up = Operator::a(b) * &Operator::a_dag(0) * &Operator::a_dag(0);
                C64::new(0.0, 0.5) * (up.clone() - up.adjoint())
            }
            OscillatorKind::Nondegenerate => {
                let up = Operator::a(b) * &Operator::a_dag(0) * &Operator::a_dag(1);
                C64::new(0.0, 1.0) * (up.clone() - up.adjoint())
            }
        }
    }

    /// Integer weights of the conserved photon-number charges.
    pub fn charges(self) -> Vec<Vec<i64>> {
        match self {
            OscillatorKind::Degenerate => alloc::vec![alloc::vec![1, 2]],
            OscillatorKind::Nondegenerate => {
                alloc::vec![alloc::vec![1, 1, 2], alloc::vec![1, -1, 0]]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OscillatorConfig {
    pub kind: OscillatorKind,
    /// Mean photon number `N` of the initial coherent pump.
    pub n_pump: f64,
    /// Phase of the initial pump amplitude `√N e^{iφ}`.
    #[cfg_attr(feature = "serde", serde(default))]
    pub pump_phase: f64,
    /// Largest initial pump occupation. `None` picks one automatically.
    #[cfg_attr(feature = "serde", serde(default))]
    pub pump_cutoff: Option<usize>,
}

impl OscillatorConfig {
    pub fn new(kind: OscillatorKind, n_pump: f64) -> Self {
        OscillatorConfig {
            kind,
            n_pump,
            pump_phase: 0.0,
            pump_cutoff: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_pump >= 0.0) || !self.n_pump.is_finite() {
            return Err(Error::invalid("n_pump", "must be finite and >= 0"));
        }
        if !self.pump_phase.is_finite() {
            return Err(Error::invalid("pump_phase", "must be finite"));
        }
        if let Some(p) = self.pump_cutoff {
            if p > MAX_CUTOFF {
                return Err(Error::invalid(
                    "pump_cutoff",
                    "exceeds the supported maximum",
                ));
            }
        }
        Ok(())
    }

    /// Angle of the quadrature that gets squeezed: `−i(A† − A)` for zero
    /// pump phase, rotating by half the pump phase otherwise.
    pub fn uncertainty_angle(&self) -> f64 {
        -FRAC_PI_2 + 0.5 * self.pump_phase
    }

    /// Initial pump amplitudes `c_0..=c_P` and the cutoff `P` actually used.
    ///
    /// An explicit cutoff that leaves more than [`TRUNCATION_TOLERANCE`] of
    /// the norm outside is rejected; the automatic one doubles until it does not.
    pub fn pump_amplitudes(&self) -> Result<(Vec<C64>, usize)> {
        self.validate()?;
        let alpha = C64::from_polar(self.n_pump.sqrt(), self.pump_phase);
        let mut cutoff = self
            .pump_cutoff
            .unwrap_or_else(|| default_cutoff(self.n_pump));
        loop {
            let amps = coherent_amplitudes(alpha, cutoff);
            let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            let deficit = (1.0 - kept).max(0.0);
            if deficit < TRUNCATION_TOLERANCE {
                let scale = 1.0 / kept.sqrt();
                return Ok((amps.into_iter().map(|a| a * scale).collect(), cutoff));
            }
            if self.pump_cutoff.is_some() || cutoff >= MAX_CUTOFF {
                return Err(Error::Truncation { cutoff, deficit });
            }
            cutoff = (cutoff.max(1) * 2).min(MAX_CUTOFF);
        }
    }
}

/// Everything measured on the state at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Observation {
    pub t: f64,
    /// Variance of the squeezed quadrature.
    pub var_x: f64,
    /// `<A†A>` of the field.
    pub intensity_y: f64,
    /// Variance minimized over the quadrature angle.
    pub var_min: f64,
    pub pump_n: f64,
    pub norm: f64,
    pub energy: f64,
    /// Expectations of the conserved charges, in [`OscillatorKind::charges`] order.
    pub charges: [f64; 2],
}

impl Observation {
    pub fn phase_resolution(&self) -> f64 {
        (self.intensity_y / self.var_x).sqrt()
    }
}

/// Exact time evolution from a fixed initial state.
#[derive(Clone, Debug)]
pub struct Trajectory {
    config: OscillatorConfig,
    pump_cutoff: usize,
    hamiltonian: Operator,
    propagator: BlockPropagator,
    initial: BlockState,
    coeffs: Vec<nalgebra::DVector<C64>>,
    observables: Observables,
}

/// Precomputed matrix elements of everything [`Trajectory::observe`] reports.
#[derive(Clone, Debug)]
struct Observables {
    mean: SparseOperator,
    second: SparseOperator,
    number: SparseOperator,
    pump_n: SparseOperator,
    energy: SparseOperator,
    charges: Vec<SparseOperator>,
}

impl Observables {
    fn new(layout: &BlockLayout, kind: OscillatorKind, hamiltonian: &Operator) -> Self {
        let a = kind.field().annihilation();
        let sparse = |op: &Operator| SparseOperator::new(layout, op);
        let charges = kind
            .charges()
            .iter()
            .map(|w| {
                let op = w
                    .iter()
                    .enumerate()
                    .fold(Operator::zero(), |acc, (k, &wk)| {
                        acc + wk as f64 * Operator::number(k)
                    });
                sparse(&op)
            })
            .collect();
        Observables {
            mean: sparse(&a),
            second: sparse(&(a.clone() * &a)),
            number: sparse(&(a.adjoint() * &a)),
            pump_n: sparse(&Operator::number(kind.pump_mode())),
            energy: sparse(hamiltonian),
            charges,
        }
    }

    fn moments(&self, flat: &[C64]) -> FieldMoments {
        FieldMoments {
            mean: self.mean.expectation(flat),
            second: self.second.expectation(flat),
            number: self.number.expectation(flat).re,
        }
    }
}

impl Trajectory {
    pub fn new(config: &OscillatorConfig) -> Result<Self> {
        let (pump, pump_cutoff) = config.pump_amplitudes()?;
        let kind = config.kind;
        let modes = kind.modes();
        let hamiltonian = kind.hamiltonian();
        let seeds: Vec<Occupation> = (0..=pump_cutoff)
            .map(|k| {
                let mut occ = Occupation::zeros(modes);
                occ.set(kind.pump_mode(), k as u32);
                occ
            })
            .collect();
        let layout = Arc::new(BlockLayout::closure(&hamiltonian, &seeds, &kind.charges())?);
        let h = BlockHamiltonian::new(layout.clone(), &hamiltonian)?;
        let deviation = h.hermiticity_deviation();
        if deviation > HERMITICITY_TOLERANCE {
            return Err(Error::invalid(
                "hamiltonian",
                alloc::format!("not Hermitian ({deviation:e})"),
            ));
        }
        let propagator = BlockPropagator::new(&h)?;
        let mut initial = BlockState::zeros(layout);
        for (occ, c) in seeds.iter().zip(pump) {
            initial.set(occ, c)?;
        }
        let coeffs = propagator.project(&initial);
        let observables = Observables::new(&propagator.layout, kind, &hamiltonian);
        Ok(Trajectory {
            config: *config,
            pump_cutoff,
            hamiltonian,
            propagator,
            initial,
            coeffs,
            observables,
        })
    }

    pub fn config(&self) -> &OscillatorConfig {
        &self.config
    }

    pub fn pump_cutoff(&self) -> usize {
        self.pump_cutoff
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.propagator.layout
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    pub fn initial(&self) -> &BlockState {
        &self.initial
    }

    pub fn propagator(&self) -> &BlockPropagator {
        &self.propagator
    }

    pub fn state_at(&self, t: f64) -> BlockState {
        self.propagator.from_coefficients(&self.coeffs, t)
    }

    pub fn moments_at(&self, t: f64) -> FieldMoments {
        self.observables.moments(&self.state_at(t).flat())
    }

    pub fn observe(&self, t: f64) -> Observation {
        let flat = self.state_at(t).flat();
        let obs = &self.observables;
        let m = obs.moments(&flat);
        let mut charges = [0.0; 2];
        for (slot, op) in charges.iter_mut().zip(&obs.charges) {
            *slot = op.expectation(&flat).re;
        }
        Observation {
            t,
            var_x: m.variance(self.config.uncertainty_angle()),
            intensity_y: m.number,
            var_min: m.min_variance(),
            pump_n: obs.pump_n.expectation(&flat).re,
            norm: flat.iter().map(|a| a.norm_sqr()).sum(),
            energy: obs.energy.expectation(&flat).re,
            charges,
        }
    }
}

/// Observations on a list of times.
pub fn evolve(config: &OscillatorConfig, times: &[f64]) -> Result<Vec<Observation>> {
    let traj = Trajectory::new(config)?;
    Ok(times.iter().map(|&t| traj.observe(t)).collect())
}

/// `points` evenly spaced times on `[0, t_max]`.
pub fn time_grid(t_max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        _ => (0..points)
            .map(|i| t_max * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Default end of the coarse search grid, `5/√N`.
pub fn default_t_max(n_pump: f64) -> f64 {
    if n_pump > 0.0 {
        5.0 / n_pump.sqrt()
    } else {
        5.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqueezingPoint {
    pub t: f64,
    pub var_x: f64,
    pub intensity_y: f64,
    pub s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimalSqueezing {
    pub n_pump: f64,
    /// First minimum of the fixed-quadrature variance.
    pub fixed: SqueezingPoint,
    /// First minimum of the angle-optimized variance.
    pub angle_optimized: SqueezingPoint,
    pub pump_n_at_tsq: f64,
    pub pump_cutoff: usize,
    pub dimension: usize,
}

/// Locate the first minimum of `f` on `[0, ∞)`: coarse grid, bracket,
/// golden-section refinement to relative tolerance `1e-6`.
fn first_minimum<F: FnMut(f64) -> f64>(mut f: F, t_max: f64) -> Result<(f64, f64)> {
    let mut t_max = t_max;
    for _ in 0..=MAX_BRACKET_DOUBLINGS {
        let times = time_grid(t_max, SEARCH_POINTS);
        let values: Vec<f64> = times.iter().map(|&t| f(t)).collect();
        if values[1] >= values[0] {
            return Ok((0.0, values[0]));
        }
        let found = (1..values.len() - 1).find(|&i| values[i] <= values[i + 1]);
        if let Some(i) = found {
            return Ok(golden_section(f, times[i - 1], times[i + 1], 1e-6, 0.0));
        }
        t_max *= 2.0;
    }
    Err(Error::NoBracket { t_max })
}

impl Trajectory {
    /// Optimum-squeezing search starting from the default grid.
    pub fn optimal_squeezing(&self) -> Result<OptimalSqueezing> {
        let t_max = default_t_max(self.config.n_pump);
        let angle = self.config.uncertainty_angle();
        let (t_fixed, _) = first_minimum(|t| self.moments_at(t).variance(angle), t_max)?;
        let (t_opt, _) = first_minimum(|t| self.moments_at(t).min_variance(), t_max)?;
        let at_fixed = self.observe(t_fixed);
        let m_opt = self.moments_at(t_opt);
        let point = |t: f64, var_x: f64, intensity_y: f64| SqueezingPoint {
            t,
            var_x,
            intensity_y,
            s: (intensity_y / var_x).sqrt(),
        };
        Ok(OptimalSqueezing {
            n_pump: self.config.n_pump,
            fixed: point(t_fixed, at_fixed.var_x, at_fixed.intensity_y),
            angle_optimized: point(t_opt, m_opt.min_variance(), m_opt.number),
            pump_n_at_tsq: at_fixed.pump_n,
            pump_cutoff: self.pump_cutoff,
            dimension: self.layout().len(),
        })
    }
}

pub fn find_optimal_squeezing(config: &OscillatorConfig) -> Result<OptimalSqueezing> {
    Trajectory::new(config)?.optimal_squeezing()
}

/// Power-law fits of the optimum against `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalingFits {
    pub s: crate::metrics::PowerLawFit,
    pub var_x: crate::metrics::PowerLawFit,
    pub t_sq: crate::metrics::PowerLawFit,
    pub s_angle_optimized: crate::metrics::PowerLawFit,
}

pub fn fit_scaling(points: &[OptimalSqueezing]) -> Result<ScalingFits> {
    let fit = |g: &dyn Fn(&OptimalSqueezing) -> f64| {
        let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.n_pump, g(p))).collect();
        crate::metrics::fit_power_law(&xy)
    };
    Ok(ScalingFits {
        s: fit(&|p| p.fixed.s)?,
        var_x: fit(&|p| p.fixed.var_x)?,
        t_sq: fit(&|p| p.fixed.t)?,
        s_angle_optimized: fit(&|p| p.angle_optimized.s)?,
    })
}
