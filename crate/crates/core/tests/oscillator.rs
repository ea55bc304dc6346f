mod common;

use approx::assert_relative_eq;
use common::{dense_oscillator, max_abs_diff};
use squeezelab_core::fock::{field_moments, FockState};
use squeezelab_core::oscillator::{
    evolve, find_optimal_squeezing, fit_scaling, time_grid, OscillatorConfig, OscillatorKind,
    Trajectory,
};

const KINDS: [OscillatorKind; 2] = [OscillatorKind::Degenerate, OscillatorKind::Nondegenerate];

#[test]
fn blocks_match_dense_small_pump() {
    let times = [0.2, 0.7, 1.5];
    for kind in KINDS {
        let traj = Trajectory::new(&OscillatorConfig::new(kind, 2.0)).unwrap();
        let cutoff = traj.pump_cutoff();
        let (dims, dense) = dense_oscillator(kind, 2.0, cutoff, &times);
        assert_eq!(traj.layout().dense_dims(), dims);
        for (&t, reference) in times.iter().zip(&dense) {
            let block = traj.state_at(t).to_dense(&dims).unwrap();
            let diff = max_abs_diff(block.amplitudes(), reference);
            assert!(diff < 1e-10, "{kind:?} t={t}: {diff:e}");
        }
    }
}

#[test]
fn initial_observation_is_vacuum_like() {
    for kind in KINDS {
        let obs = evolve(&OscillatorConfig::new(kind, 9.0), &[0.0]).unwrap();
        assert_relative_eq!(obs[0].var_x, 1.0, epsilon = 1e-12);
        assert!(obs[0].intensity_y.abs() < 1e-12);
        assert_relative_eq!(obs[0].pump_n, 9.0, epsilon = 1e-8);
        assert_relative_eq!(obs[0].norm, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn invariants_hold_along_trajectory() {
    for kind in KINDS {
        let cfg = OscillatorConfig::new(kind, 12.0);
        let obs = evolve(&cfg, &time_grid(3.0, 61)).unwrap();
        let first = obs[0];
        for o in &obs {
            assert!((o.norm - first.norm).abs() < 1e-9);
            assert!((o.energy - first.energy).abs() < 1e-9 * first.energy.abs().max(1.0));
            for (c, c0) in o.charges.iter().zip(first.charges) {
                assert!((c - c0).abs() < 1e-9 * c0.abs().max(1.0));
            }
            assert!(o.var_x > 0.0);
        }
    }
}

#[test]
fn energy_moves_from_pump_to_subharmonic() {
    let opt =
        find_optimal_squeezing(&OscillatorConfig::new(OscillatorKind::Degenerate, 16.0)).unwrap();
    assert!(opt.fixed.var_x < 1.0);
    assert!(opt.pump_n_at_tsq < 16.0);
    // the pump keeps most of its photons at maximal squeezing
    assert!(opt.pump_n_at_tsq > 8.0);
}

#[test]
fn degenerate_n4_fixture() {
    let opt =
        find_optimal_squeezing(&OscillatorConfig::new(OscillatorKind::Degenerate, 4.0)).unwrap();
    assert_relative_eq!(opt.fixed.t, 0.599_797_1, max_relative = 2e-6);
    assert_relative_eq!(opt.fixed.var_x, 0.152_257_157_9, max_relative = 1e-8);

    // the same numbers from the dense route
    let cutoff = opt.pump_cutoff;
    let (dims, dense) = dense_oscillator(OscillatorKind::Degenerate, 4.0, cutoff, &[opt.fixed.t]);
    let state = FockState::from_amplitudes(&dims, dense[0].clone()).unwrap();
    let m = field_moments(&state, OscillatorKind::Degenerate.field()).unwrap();
    let var = m.variance(-core::f64::consts::FRAC_PI_2);
    assert_relative_eq!(var, 0.152_257_157_9, max_relative = 1e-8);
}

#[test]
fn angle_optimized_is_never_worse() {
    for kind in KINDS {
        let opt = find_optimal_squeezing(&OscillatorConfig::new(kind, 8.0)).unwrap();
        assert!(opt.angle_optimized.var_x <= opt.fixed.var_x + 1e-9);
    }
}

#[test]
fn squeezing_improves_with_pump() {
    let points: Vec<_> = [4.0, 8.0, 16.0]
        .iter()
        .map(|&n| {
            find_optimal_squeezing(&OscillatorConfig::new(OscillatorKind::Nondegenerate, n))
                .unwrap()
        })
        .collect();
    for w in points.windows(2) {
        assert!(w[1].fixed.var_x < w[0].fixed.var_x);
        assert!(w[1].fixed.s > w[0].fixed.s);
        assert!(w[1].fixed.t < w[0].fixed.t);
    }
    let fits = fit_scaling(&points).unwrap();
    assert!(fits.var_x.exponent < 0.0 && fits.s.exponent > 0.0);
}
