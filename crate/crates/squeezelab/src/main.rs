use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squeezelab::config::{
    FitConfig, MixConfig, SchemeConfig, SimulateConfig, SpectraConfig, SurfaceConfig, SweepConfig,
};
use squeezelab::output::read_json;
use squeezelab::range::parse_values;
use squeezelab::{execute, CliError, Result, RunConfig};
use squeezelab_core::gaussian::MixerVariant;
use squeezelab_core::metrics::DistanceMeasure;
use squeezelab_core::mixer::{BeamSplitter, Interferometer, MixerConfig};
use squeezelab_core::oscillator::OscillatorKind;

#[derive(Parser)]
#[command(
    name = "squeezelab",
    version,
    about = "Phase resolution of squeezed light from parametric oscillators"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "SQUEEZELAB_JOBS")]
    jobs: Option<usize>,
    /// Directory for every output file (default `.`; for `run`, the one in the file).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one oscillator and locate its optimum squeezing.
    #[command(allow_negative_numbers = true)]
    Simulate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Mean pump photon number.
        #[arg(long = "N")]
        n: f64,
        #[arg(long, default_value_t = 0.0)]
        pump_phase: f64,
        /// Fixed pump occupation cutoff; too small a value exits with code 3.
        #[arg(long)]
        pump_cutoff: Option<usize>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Optimum squeezing over a range of pump photon numbers, with power-law fits.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long, value_enum)]
        kind: Kind,
        /// `16`, `4,16,64` or `lo:hi:geometric:count`.
        #[arg(long = "N")]
        n: String,
        #[arg(long, default_value_t = 0.0)]
        pump_phase: f64,
    },
    /// Mix a coherent beam with squeezed vacuum.
    #[command(allow_negative_numbers = true)]
    Mix {
        #[command(flatten)]
        mixer: MixerArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        s: f64,
        /// Squeezing phase; by default aligned with the measured quadrature.
        #[arg(long)]
        theta: Option<f64>,
        /// Cross-check the closed form against the Fock-space simulation.
        #[arg(long)]
        oracle: bool,
        /// Also write the output state amplitudes.
        #[arg(long)]
        dump_state: bool,
    },
    /// Pump-derived coherent and squeezed beams through one mixer.
    #[command(allow_negative_numbers = true)]
    Scheme {
        #[arg(long = "N")]
        n: f64,
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        mixer: MixerArgs,
    },
    /// Exact against asymptotic scheme resolution over N and the mixer setting.
    #[command(allow_negative_numbers = true)]
    Surface {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "N")]
        n: String,
        /// Values of r2 (bs) or phi (in).
        #[arg(long)]
        settings: String,
    },
    /// Power-law fit of a two-column CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
    },
    /// Frequency-resolved phase resolution from measured spectra.
    Spectra {
        #[arg(long)]
        squeezed: PathBuf,
        #[arg(long)]
        intensity: PathBuf,
        #[arg(long)]
        unsqueezed: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Measure::Intensity)]
        measure: Measure,
    },
    /// Replay a configuration file, e.g. an echoed `*.config.json`.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct MixerArgs {
    #[arg(long, value_enum)]
    variant: Variant,
    /// Beam-splitter reflectivity amplitude.
    #[arg(long)]
    r2: Option<f64>,
    /// Beam-splitter common phase.
    #[arg(long)]
    delta: Option<f64>,
    /// Interferometer arm phase difference.
    #[arg(long)]
    phi: Option<f64>,
    /// Interferometer common phase.
    #[arg(long)]
    big_phi: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    psi: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Degenerate,
    Nondegenerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Bs,
    In,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Intensity,
    Unsqueezed,
}

impl From<Kind> for OscillatorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Degenerate => OscillatorKind::Degenerate,
            Kind::Nondegenerate => OscillatorKind::Nondegenerate,
        }
    }
}

impl From<Variant> for MixerVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Bs => MixerVariant::BeamSplitter,
            Variant::In => MixerVariant::Interferometer,
        }
    }
}

impl MixerArgs {
    fn build(&self) -> Result<MixerConfig> {
        match self.variant {
            Variant::Bs => {
                if self.phi.is_some() || self.big_phi.is_some() {
                    return Err(CliError::validation(
                        "--phi and --big-phi apply to --variant in",
                    ));
                }
                let r2 = self
                    .r2
                    .ok_or_else(|| CliError::validation("--variant bs needs --r2"))?;
                let bs = BeamSplitter::from_reflectivity(r2, self.delta.unwrap_or(0.0), self.psi)?;
                Ok(MixerConfig::BeamSplitter(bs))
            }
            Variant::In => {
                if self.r2.is_some() || self.delta.is_some() {
                    return Err(CliError::validation(
                        "--r2 and --delta apply to --variant bs",
                    ));
                }
                let phi = self
                    .phi
                    .ok_or_else(|| CliError::validation("--variant in needs --phi"))?;
                let ifm = Interferometer::new(phi, self.psi, self.big_phi.unwrap_or(0.0))?;
                Ok(MixerConfig::Interferometer(ifm))
            }
        }
    }
}

fn to_config(command: Command, out_dir: Option<PathBuf>) -> Result<RunConfig> {
    if let Command::Run { config } = command {
        let mut cfg: RunConfig = read_json(&config)?;
        if let Some(dir) = out_dir {
            cfg.set_out_dir(dir);
        }
        return Ok(cfg);
    }
    let out_dir = out_dir.unwrap_or_else(|| PathBuf::from("."));
    Ok(match command {
        Command::Simulate {
            kind,
            n,
            pump_phase,
            pump_cutoff,
            t_max,
            points,
        } => RunConfig::Simulate(SimulateConfig {
            kind: kind.into(),
            n_pump: n,
            pump_phase,
            pump_cutoff,
            t_max,
            points,
            out_dir,
        }),
        Command::Sweep {
            kind,
            n,
            pump_phase,
        } => RunConfig::Sweep(SweepConfig {
            kind: kind.into(),
            n_values: parse_values(&n)?,
            pump_phase,
            out_dir,
        }),
        Command::Mix {
            mixer,
            alpha,
            s,
            theta,
            oracle,
            dump_state,
        } => RunConfig::Mix(MixConfig {
            mixer: mixer.build()?,
            alpha,
            s,
            theta,
            oracle,
            dump_state,
            out_dir,
        }),
        Command::Scheme { n, lambda, mixer } => RunConfig::Scheme(SchemeConfig {
            n_pump: n,
            lambda,
            mixer: mixer.build()?,
            out_dir,
        }),
        Command::Surface {
            variant,
            lambda,
            n,
            settings,
        } => RunConfig::Surface(SurfaceConfig {
            variant: variant.into(),
            lambda,
            n_values: parse_values(&n)?,
            settings: parse_values(&settings)?,
            out_dir,
        }),
        Command::Fit { input } => RunConfig::Fit(FitConfig { input, out_dir }),
        Command::Spectra {
            squeezed,
            intensity,
            unsqueezed,
            measure,
        } => RunConfig::Spectra(SpectraConfig {
            squeezed,
            intensity,
            unsqueezed,
            measure: match measure {
                Measure::Intensity => DistanceMeasure::Intensity,
                Measure::Unsqueezed => DistanceMeasure::UnsqueezedVariance,
            },
            out_dir,
        }),
        Command::Run { .. } => unreachable!("handled above"),
    })
}

fn run(cli: Cli) -> Result<()> {
    let jobs = match cli.jobs {
        Some(0) => return Err(CliError::validation("--jobs must be at least 1")),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let cfg = to_config(cli.command, cli.out_dir)?;
    let outcome = execute(&cfg, jobs)?;
    println!("{}", outcome.report);
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
