use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use squeezelab_core::fock::{
    apply_mode_map, coherent_state, squeezed_vacuum, Field, SqueezeParams,
};
use squeezelab_core::gaussian::{
    mixed_phase_resolution, scheme_phase_resolution_approx, scheme_surface, SchemeParams,
    SurfaceGrid,
};
use squeezelab_core::metrics::{
    fit_power_law, spectral_phase_resolution, state_phase_resolution, DistanceMeasure, PowerLawFit,
    SpectraInput,
};
use squeezelab_core::oscillator::{default_t_max, fit_scaling, time_grid, Trajectory};
use squeezelab_core::C64;

use crate::config::{
    FitConfig, MixConfig, RunConfig, SchemeConfig, SimulateConfig, SpectraConfig, SurfaceConfig,
    SweepConfig, SCHEMA,
};
use crate::error::{CliError, Result};
use crate::output::{ensure_dir, read_two_columns, state_dump, write_csv, write_json, write_text};
use crate::svg::{heatmap, line_plot, Axes, Series};

/// Relative tolerance of the `--oracle` cross-check.
pub const ORACLE_TOLERANCE: f64 = 1e-4;

/// What a run wrote and a one-paragraph report for the terminal.
#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub report: String,
}

struct Writer<'a> {
    dir: &'a Path,
    name: &'static str,
    files: Vec<PathBuf>,
}

impl Writer<'_> {
    fn path(&mut self, suffix: &str) -> PathBuf {
        let p = self.dir.join(format!("{}{suffix}", self.name));
        self.files.push(p.clone());
        p
    }

    fn json<T: Serialize + ?Sized>(&mut self, suffix: &str, value: &T) -> Result<()> {
        let p = self.path(suffix);
        write_json(&p, value)
    }

    fn csv<T: Serialize>(&mut self, rows: &[T]) -> Result<()> {
        let p = self.path(".csv");
        write_csv(&p, rows)
    }

    fn svg(&mut self, text: &str) -> Result<()> {
        let p = self.path(".svg");
        write_text(&p, text)
    }
}

/// Validate, run and write every output of one configuration.
pub fn execute(cfg: &RunConfig, jobs: usize) -> Result<Outcome> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::validation(format!("cannot start {jobs} workers: {e}")))?;
    ensure_dir(cfg.out_dir())?;
    let mut w = Writer {
        dir: cfg.out_dir(),
        name: cfg.name(),
        files: Vec::new(),
    };
    w.json(".config.json", cfg)?;
    let report = pool.install(|| match cfg {
        RunConfig::Simulate(c) => simulate(c, cfg, &mut w),
        RunConfig::Sweep(c) => sweep(c, cfg, &mut w),
        RunConfig::Mix(c) => mix(c, cfg, &mut w),
        RunConfig::Scheme(c) => scheme(c, cfg, &mut w),
        RunConfig::Surface(c) => surface(c, cfg, &mut w),
        RunConfig::Fit(c) => fit(c, cfg, &mut w),
        RunConfig::Spectra(c) => spectra(c, cfg, &mut w),
    })?;
    Ok(Outcome {
        files: w.files,
        report,
    })
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: f64,
    #[serde(rename = "var_X")]
    var_x: f64,
    #[serde(rename = "intensity_Y")]
    intensity_y: f64,
    pump_n: f64,
}

fn simulate(c: &SimulateConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let traj = Trajectory::new(&c.oscillator())?;
    let opt = traj.optimal_squeezing()?;
    let t_max = c.t_max.unwrap_or(if opt.fixed.t > 0.0 {
        2.0 * opt.fixed.t
    } else {
        default_t_max(c.n_pump)
    });
    let obs: Vec<_> = time_grid(t_max, c.points)
        .par_iter()
        .map(|&t| traj.observe(t))
        .collect();
    let rows: Vec<TrajectoryRow> = obs
        .iter()
        .map(|o| TrajectoryRow {
            t: o.t,
            var_x: o.var_x,
            intensity_y: o.intensity_y,
            pump_n: o.pump_n,
        })
        .collect();
    let first = traj.observe(0.0);
    let drift = obs.iter().fold(0.0f64, |d, o| {
        let charge = o
            .charges
            .iter()
            .zip(first.charges)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        d.max((o.norm - first.norm).abs())
            .max((o.energy - first.energy).abs())
            .max(charge)
    });
    w.csv(&rows)?;
    w.json(
        ".json",
        &json!({
            "schema": SCHEMA,
            "config": cfg,
            "t_sq": opt.fixed.t,
            "var_min": opt.fixed.var_x,
            "S": opt.fixed.s,
            "intensity_Y_at_tsq": opt.fixed.intensity_y,
            "pump_n_at_tsq": opt.pump_n_at_tsq,
            "angle_optimized": {
                "t": opt.angle_optimized.t,
                "var_min": opt.angle_optimized.var_x,
                "S": opt.angle_optimized.s,
            },
            "pump_cutoff": opt.pump_cutoff,
            "dimension": opt.dimension,
            "max_invariant_drift": drift,
        }),
    )?;
    let series = [Series {
        label: "var_X",
        points: rows.iter().map(|r| (r.t, r.var_x)).collect(),
    }];
    w.svg(&line_plot(
        &series,
        Axes {
            title: "squeezed-quadrature variance",
            x_label: "t",
            y_label: "var_X",
            log_x: false,
            log_y: false,
        },
    ))?;
    Ok(format!(
        "t_sq = {:.6}, var_min = {:.6}, S = {:.6} (pump cutoff {}, {} basis states)",
        opt.fixed.t, opt.fixed.var_x, opt.fixed.s, opt.pump_cutoff, opt.dimension
    ))
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "N")]
    n: f64,
    t_sq: f64,
    var_min: f64,
    #[serde(rename = "S")]
    s: f64,
    var_min_angle: f64,
    #[serde(rename = "S_angle")]
    s_angle: f64,
    pump_n_at_tsq: f64,
}

fn fit_json(f: &PowerLawFit) -> serde_json::Value {
    json!({ "exponent": f.exponent, "prefactor": f.prefactor, "r2": f.r2, "points": f.points })
}

fn sweep(c: &SweepConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let points = c
        .n_values
        .par_iter()
        .map(|&n| {
            let mut osc = squeezelab_core::oscillator::OscillatorConfig::new(c.kind, n);
            osc.pump_phase = c.pump_phase;
            Trajectory::new(&osc)?.optimal_squeezing()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fits = fit_scaling(&points)?;
    let rows: Vec<SweepRow> = points
        .iter()
        .map(|p| SweepRow {
            n: p.n_pump,
            t_sq: p.fixed.t,
            var_min: p.fixed.var_x,
            s: p.fixed.s,
            var_min_angle: p.angle_optimized.var_x,
            s_angle: p.angle_optimized.s,
            pump_n_at_tsq: p.pump_n_at_tsq,
        })
        .collect();
    w.csv(&rows)?;
    w.json(
        ".json",
        &json!({
            "schema": SCHEMA,
            "config": cfg,
            "fits": {
                "S": fit_json(&fits.s),
                "var_min": fit_json(&fits.var_x),
                "t_sq": fit_json(&fits.t_sq),
                "S_angle": fit_json(&fits.s_angle_optimized),
            },
        }),
    )?;
    let series = [
        Series {
            label: "S",
            points: rows.iter().map(|r| (r.n, r.s)).collect(),
        },
        Series {
            label: "var_min",
            points: rows.iter().map(|r| (r.n, r.var_min)).collect(),
        },
    ];
    w.svg(&line_plot(
        &series,
        Axes {
            title: "optimum squeezing vs pump",
            x_label: "N",
            y_label: "value",
            log_x: true,
            log_y: true,
        },
    ))?;
    Ok(format!(
        "S ~ N^{:.4} (r2 {:.4}), var_min ~ N^{:.4}",
        fits.s.exponent, fits.s.r2, fits.var_x.exponent
    ))
}

fn relative_error(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn mix(c: &MixConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let theta = c.theta.unwrap_or_else(|| c.mixer.optimal_theta());
    let sq = SqueezeParams::new(c.s, theta)?;
    let analytic = mixed_phase_resolution(&c.mixer, sq, c.alpha)?;
    let mut doc = json!({
        "schema": SCHEMA,
        "config": cfg,
        "theta": sq.theta,
        "analytic": { "intensity_Y": analytic.intensity_y, "var_X": analytic.var_x, "S": analytic.s },
    });
    let mut report = format!(
        "S = {:.6} (var_X {:.6}, intensity_Y {:.6})",
        analytic.s, analytic.var_x, analytic.intensity_y
    );
    let mut failure = None;
    if c.oracle || c.dump_state {
        let input = coherent_state(C64::new(c.alpha, 0.0), 0)?.tensor(&squeezed_vacuum(sq, 0)?)?;
        let out = apply_mode_map(&input, &c.mixer.mode_map()?)?;
        if c.oracle {
            let fock =
                state_phase_resolution(&out, Field::Mode(0), 0.0, DistanceMeasure::Intensity)?;
            let errs = [
                relative_error(fock.intensity_y, analytic.intensity_y),
                relative_error(fock.var_x, analytic.var_x),
                relative_error(fock.s, analytic.s),
            ];
            let worst = errs.iter().cloned().fold(0.0, f64::max);
            let pass = worst <= ORACLE_TOLERANCE;
            doc["oracle"] = json!({
                "intensity_Y": fock.intensity_y,
                "var_X": fock.var_x,
                "S": fock.s,
                "dims": out.dims(),
                "max_rel_err": worst,
                "tolerance": ORACLE_TOLERANCE,
                "pass": pass,
            });
            report.push_str(&format!(
                "\noracle: intensity_Y {:.3e}, var_X {:.3e}, S {:.3e} relative error; max {worst:.3e} vs tolerance {ORACLE_TOLERANCE:e}: {}",
                errs[0],
                errs[1],
                errs[2],
                if pass { "ok" } else { "FAILED" }
            ));
            if !pass {
                failure = Some(format!(
                    "max relative error {worst:.3e} exceeds {ORACLE_TOLERANCE:e}"
                ));
            }
        }
        if c.dump_state {
            w.json(".state.json", &state_dump(&out))?;
        }
    }
    w.json(".json", &doc)?;
    match failure {
        Some(msg) => Err(CliError::Oracle(msg)),
        None => Ok(report),
    }
}

fn scheme(c: &SchemeConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let params = SchemeParams::new(c.n_pump, c.lambda, c.mixer)?;
    let a = scheme_phase_resolution_approx(&params)?;
    w.json(
        ".json",
        &json!({
            "schema": SCHEMA,
            "config": cfg,
            "squeeze_parameter": params.squeeze_parameter(),
            "coherent_photons": params.coherent_photons(),
            "squeezed_photons": params.squeezed_photons(),
            "S_exact": a.exact,
            "S_asymptotic": a.asymptotic,
            "S_leading": a.leading,
            "rel_dev_asymptotic": a.rel_dev_asymptotic,
            "rel_dev_leading": a.rel_dev_leading,
        }),
    )?;
    Ok(format!(
        "S = {:.6} (asymptotic {:.6}, leading (2N lambda)^1/2 = {:.6})",
        a.exact, a.asymptotic, a.leading
    ))
}

#[derive(Serialize)]
struct SurfaceRow {
    #[serde(rename = "N")]
    n: f64,
    r2_or_phi: f64,
    #[serde(rename = "S_exact")]
    s_exact: f64,
    #[serde(rename = "S_approx")]
    s_approx: f64,
    rel_dev: f64,
}

fn surface(c: &SurfaceConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let grid = SurfaceGrid {
        variant: c.variant,
        lambda: c.lambda,
        n_values: c.n_values.clone(),
        settings: c.settings.clone(),
    };
    let points = scheme_surface(&grid)?;
    let rows: Vec<SurfaceRow> = points
        .iter()
        .map(|p| SurfaceRow {
            n: p.n,
            r2_or_phi: p.setting,
            s_exact: p.s_exact,
            s_approx: p.s_approx,
            rel_dev: p.rel_dev,
        })
        .collect();
    let worst = rows.iter().fold(0.0f64, |m, r| m.max(r.rel_dev.abs()));
    w.csv(&rows)?;
    w.json(
        ".json",
        &json!({ "schema": SCHEMA, "config": cfg, "rows": rows.len(), "max_abs_rel_dev": worst }),
    )?;
    // rows of the picture are settings, columns are N
    let values: Vec<Vec<f64>> = (0..c.settings.len())
        .map(|j| {
            (0..c.n_values.len())
                .map(|i| {
                    let p = &points[i * c.settings.len() + j];
                    p.s_exact / (2.0 * p.n * c.lambda).sqrt()
                })
                .collect()
        })
        .collect();
    w.svg(&heatmap(
        &c.n_values,
        &c.settings,
        &values,
        Axes {
            title: "S / (2N lambda)^1/2",
            x_label: "N",
            y_label: "setting",
            log_x: true,
            log_y: false,
        },
    ))?;
    Ok(format!(
        "{} surface points, max |rel_dev| of the asymptotic form {worst:.3e}",
        rows.len()
    ))
}

fn fit(c: &FitConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let points = read_two_columns(&c.input)?;
    let f = fit_power_law(&points)?;
    w.json(
        ".json",
        &json!({
            "schema": SCHEMA,
            "config": cfg,
            "exponent": f.exponent,
            "prefactor": f.prefactor,
            "r2": f.r2,
            "points": f.points,
        }),
    )?;
    Ok(format!(
        "exponent {:.6}, prefactor {:.6}, r2 {:.6}",
        f.exponent, f.prefactor, f.r2
    ))
}

#[derive(Serialize)]
struct SpectrumRow {
    omega: f64,
    #[serde(rename = "S")]
    s: f64,
}

fn spectra(c: &SpectraConfig, cfg: &RunConfig, w: &mut Writer) -> Result<String> {
    let squeezed = read_two_columns(&c.squeezed)?;
    let frequencies: Vec<f64> = squeezed.iter().map(|p| p.0).collect();
    let values_on_grid = |path: &Path| -> Result<Vec<f64>> {
        let rows = read_two_columns(path)?;
        if rows.len() != frequencies.len() || rows.iter().zip(&frequencies).any(|(r, f)| r.0 != *f)
        {
            return Err(CliError::validation(format!(
                "{}: frequency grid differs from {}",
                path.display(),
                c.squeezed.display()
            )));
        }
        Ok(rows.into_iter().map(|r| r.1).collect())
    };
    let input = SpectraInput {
        intensity: values_on_grid(&c.intensity)?,
        unsqueezed: c.unsqueezed.as_deref().map(values_on_grid).transpose()?,
        squeezed: squeezed.iter().map(|p| p.1).collect(),
        frequencies,
        gamma: None,
        measurement_time: None,
    };
    let s = spectral_phase_resolution(&input, c.measure)?;
    let rows: Vec<SpectrumRow> = input
        .frequencies
        .iter()
        .zip(&s)
        .map(|(&omega, &s)| SpectrumRow { omega, s })
        .collect();
    let peak = rows.iter().max_by(|a, b| a.s.total_cmp(&b.s));
    w.csv(&rows)?;
    w.json(
        ".json",
        &json!({
            "schema": SCHEMA,
            "config": cfg,
            "points": rows.len(),
            "peak_S": peak.map(|r| r.s),
            "peak_omega": peak.map(|r| r.omega),
        }),
    )?;
    Ok(match peak {
        Some(p) => format!("peak S = {:.6} at omega = {}", p.s, p.omega),
        None => "no spectral points".to_string(),
    })
}
