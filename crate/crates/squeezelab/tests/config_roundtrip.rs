use std::path::PathBuf;

use proptest::prelude::*;
use squeezelab::config::{MixConfig, RunConfig, SimulateConfig, SurfaceConfig};
use squeezelab_core::gaussian::MixerVariant;
use squeezelab_core::mixer::{BeamSplitter, Interferometer, MixerConfig};
use squeezelab_core::oscillator::OscillatorKind;

fn reload(cfg: &RunConfig) -> RunConfig {
    let text = serde_json::to_string_pretty(cfg).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn mixer() -> impl Strategy<Value = MixerConfig> {
    prop_oneof![
        (0.0..=1.0f64, -7.0..7.0f64, -7.0..7.0f64).prop_map(|(r, d, p)| {
            MixerConfig::BeamSplitter(BeamSplitter::from_reflectivity(r, d, p).unwrap())
        }),
        (0.0..=std::f64::consts::PI, -7.0..7.0f64, -7.0..7.0f64).prop_map(|(phi, psi, big)| {
            MixerConfig::Interferometer(Interferometer::new(phi, psi, big).unwrap())
        }),
    ]
}

proptest! {
    #[test]
    fn mix_echo_reloads_exactly(
        mixer in mixer(),
        alpha in 0.0..1e3f64,
        s in 0.0..5.0f64,
        theta in proptest::option::of(-10.0..10.0f64),
        oracle: bool,
    ) {
        let cfg = RunConfig::Mix(MixConfig {
            mixer, alpha, s, theta, oracle, dump_state: !oracle, out_dir: PathBuf::from("out"),
        });
        prop_assert_eq!(reload(&cfg), cfg);
    }

    #[test]
    fn simulate_echo_reloads_exactly(
        n in 0.0..1e4f64,
        phase in -10.0..10.0f64,
        cutoff in proptest::option::of(1usize..500),
        t_max in proptest::option::of(1e-6..1e3f64),
        points in 2usize..10_000,
        degenerate: bool,
    ) {
        let kind = if degenerate { OscillatorKind::Degenerate } else { OscillatorKind::Nondegenerate };
        let cfg = RunConfig::Simulate(SimulateConfig {
            kind, n_pump: n, pump_phase: phase, pump_cutoff: cutoff, t_max, points,
            out_dir: PathBuf::from("a/b"),
        });
        prop_assert_eq!(reload(&cfg), cfg);
    }

    #[test]
    fn surface_echo_reloads_exactly(
        n_values in proptest::collection::vec(1.0..1e9f64, 1..8),
        settings in proptest::collection::vec(0.0..1.0f64, 1..8),
        lambda in 1e-6..1.0f64,
    ) {
        let cfg = RunConfig::Surface(SurfaceConfig {
            variant: MixerVariant::BeamSplitter, lambda, n_values, settings, out_dir: PathBuf::from("."),
        });
        prop_assert_eq!(reload(&cfg), cfg);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"command": "fit", "input": "x.csv", "out_dir": ".", "extra": 1}"#;
    assert!(serde_json::from_str::<RunConfig>(text).is_err());
}
