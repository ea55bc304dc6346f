//! Phase-resolution metric, its spectral form, and power-law fits.
//!
//! The phase resolution of a state is
//! `S = (<Y†Y> / <ΔX²>)^{1/2}`: the intensity along the mean field divided
//! by the variance of the orthogonal ("uncertainty") quadrature. For a
//! coherent state `<Y†Y> = |α|²` and `<ΔX²> = 1`, so `S = |α| = N^{1/2}`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use crate::fock::{expectation, Amplitudes, Field};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhaseResolution {
    pub intensity_y: f64,
    pub var_x: f64,
    pub s: f64,
}

/// What goes in the numerator of the phase resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DistanceMeasure {
    /// `<Y†Y>`, the intensity of the field.
    #[default]
    Intensity,
    /// Variance of the unsqueezed quadrature. Near threshold this counts
    /// slow critical fluctuations as signal and scales as `N^{3/4}`.
    UnsqueezedVariance,
}

pub fn phase_resolution(intensity_y: f64, var_x: f64) -> Result<PhaseResolution> {
    if !(var_x > 0.0) || !var_x.is_finite() {
        return Err(Error::NonPositiveVariance(var_x));
    }
    if !(intensity_y >= 0.0) || !intensity_y.is_finite() {
        return Err(Error::invalid(
            "intensity_y",
            "intensity must be finite and >= 0",
        ));
    }
    Ok(PhaseResolution {
        intensity_y,
        var_x,
        s: (intensity_y / var_x).sqrt(),
    })
}

/// Phase resolution of a state for a given field and uncertainty
/// quadrature angle (`X = e^{−iφ}A + e^{iφ}A†`).
pub fn state_phase_resolution<S: Amplitudes + ?Sized>(
    state: &S,
    field: Field,
    uncertainty_angle: f64,
    measure: DistanceMeasure,
) -> Result<PhaseResolution> {
    let var_x = quadrature_variance(state, field, uncertainty_angle)?;
    let numerator = match measure {
        DistanceMeasure::Intensity => {
            let a = field.annihilation();
            expectation(state, &(a.adjoint() * &a))?.re.max(0.0)
        }
        DistanceMeasure::UnsqueezedVariance => {
            quadrature_variance(state, field, uncertainty_angle + FRAC_PI_2)?
        }
    };
    phase_resolution(numerator, var_x)
}

pub(crate) fn quadrature_variance<S: Amplitudes + ?Sized>(
    state: &S,
    field: Field,
    angle: f64,
) -> Result<f64> {
    let q = field.quadrature(angle);
    let mean = expectation(state, &q)?.re;
    let second = expectation(state, &(q.clone() * &q))?.re;
    Ok(second - mean * mean)
}

/// Output spectra of a driven oscillator, supplied as data.
///
/// `gamma` and `measurement_time` are carried as labels only (the spectra
/// are already normalized).
#[derive(Clone, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectraInput {
    /// Frequencies in units of the cavity linewidth.
    pub frequencies: Vec<f64>,
    /// Squeezed-quadrature spectrum `V(ω)`.
    pub squeezed: Vec<f64>,
    /// Intensity spectrum `W(ω)`.
    pub intensity: Vec<f64>,
    /// Unsqueezed-quadrature spectrum, needed only for
    /// [`DistanceMeasure::UnsqueezedVariance`].
    pub unsqueezed: Option<Vec<f64>>,
    pub gamma: Option<f64>,
    pub measurement_time: Option<f64>,
}

impl SpectraInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.frequencies.len();
        let check_len = |v: &[f64]| {
            if v.len() != n {
                Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                })
            } else {
                Ok(())
            }
        };
        check_len(&self.squeezed)?;
        check_len(&self.intensity)?;
        if let Some(u) = &self.unsqueezed {
            check_len(u)?;
        }
        if let Some(&v) = self.squeezed.iter().find(|v| !(**v > 0.0)) {
            return Err(Error::NonPositiveVariance(v));
        }
        Ok(())
    }
}

/// `S̃(ω) = (W(ω)/V(ω))^{1/2}` pointwise, or the unsqueezed-spectrum variant.
pub fn spectral_phase_resolution(sp: &SpectraInput, measure: DistanceMeasure) -> Result<Vec<f64>> {
    sp.validate()?;
    let numerators = match measure {
        DistanceMeasure::Intensity => &sp.intensity,
        DistanceMeasure::UnsqueezedVariance => sp
            .unsqueezed
            .as_ref()
            .ok_or_else(|| Error::invalid("unsqueezed", "spectrum required for this metric"))?,
    };
    numerators
        .iter()
        .zip(&sp.squeezed)
        .map(|(&w, &v)| phase_resolution(w, v).map(|p| p.s))
        .collect()
}

/// `value ≈ prefactor · N^exponent`, fitted by unweighted least squares in
/// log-log space.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r2: f64,
    pub points: usize,
}

impl PowerLawFit {
    pub fn predict(&self, n: f64) -> f64 {
        self.prefactor * n.powf(self.exponent)
    }
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: points.len(),
        });
    }
    if let Some(index) = points
        .iter()
        .position(|&(x, y)| !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite())
    {
        return Err(Error::NonPositiveData { index });
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x.ln(), sy + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x.ln() - mx, y.ln() - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::invalid("points", "abscissae must not all be equal"));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y.ln() - (intercept + exponent * x.ln());
            r * r
        })
        .sum();
    // a constant series is fitted exactly
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(PowerLawFit {
        exponent,
        prefactor: intercept.exp(),
        r2,
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, FockState};
    use crate::C64;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn basic_values() {
        assert_abs_diff_eq!(phase_resolution(1.0, 1.0).unwrap().s, 1.0);
        assert_abs_diff_eq!(phase_resolution(25.0, 1.0).unwrap().s, 5.0);
        let n: f64 = 400.0;
        assert_abs_diff_eq!(
            phase_resolution(n.sqrt(), 1.0 / n.sqrt()).unwrap().s,
            20.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rejects_bad_variance() {
        assert!(matches!(
            phase_resolution(1.0, 0.0),
            Err(Error::NonPositiveVariance(_))
        ));
        assert!(phase_resolution(1.0, -2.0).is_err());
        assert!(phase_resolution(-1.0, 1.0).is_err());
    }

    #[test]
    fn coherent_state_resolution() {
        let s = coherent_state(C64::new(3.0, 0.0), 0).unwrap();
        let pr = state_phase_resolution(&s, Field::Mode(0), -FRAC_PI_2, DistanceMeasure::Intensity)
            .unwrap();
        assert_abs_diff_eq!(pr.s, 3.0, epsilon = 1e-6);
        let v = FockState::vacuum(&[3]).unwrap();
        let pr =
            state_phase_resolution(&v, Field::Mode(0), 0.0, DistanceMeasure::Intensity).unwrap();
        assert_abs_diff_eq!(pr.s, 0.0);
        assert_abs_diff_eq!(pr.var_x, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn spectral_ratio() {
        let sp = SpectraInput {
            frequencies: vec![-1.0, 0.0, 1.0],
            squeezed: vec![1.0, 1.0, 0.5],
            intensity: vec![1.0, 4.0, 0.5],
            ..Default::default()
        };
        let s = spectral_phase_resolution(&sp, DistanceMeasure::Intensity).unwrap();
        assert_eq!(s, vec![1.0, 2.0, 1.0]);
        assert!(spectral_phase_resolution(&sp, DistanceMeasure::UnsqueezedVariance).is_err());
    }

    #[test]
    fn spectral_rejects_nonpositive_and_mismatch() {
        let mut sp = SpectraInput {
            frequencies: vec![0.0, 1.0],
            squeezed: vec![1.0, 0.0],
            intensity: vec![1.0, 1.0],
            ..Default::default()
        };
        assert!(matches!(
            spectral_phase_resolution(&sp, DistanceMeasure::Intensity),
            Err(Error::NonPositiveVariance(_))
        ));
        sp.squeezed = vec![1.0];
        assert!(matches!(
            spectral_phase_resolution(&sp, DistanceMeasure::Intensity),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lorentzian_peak_ratio() {
        let n = 64.0;
        let freqs: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.1).collect();
        let v: Vec<f64> = freqs.iter().map(|w| 1.0 / (1.0 + w * w)).collect();
        let w: Vec<f64> = freqs.iter().map(|w| n / (1.0 + w * w)).collect();
        let sp = SpectraInput {
            frequencies: freqs,
            squeezed: v,
            intensity: w,
            ..Default::default()
        };
        let s = spectral_phase_resolution(&sp, DistanceMeasure::Intensity).unwrap();
        assert_abs_diff_eq!(s[20], 8.0, epsilon = 1e-12);
    }

    #[test]
    fn exact_power_laws() {
        let f = fit_power_law(&[(1.0, 1.0), (4.0, 2.0), (16.0, 4.0)]).unwrap();
        assert_abs_diff_eq!(f.exponent, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.r2, 1.0, epsilon = 1e-12);
        let c = fit_power_law(&[(1.0, 2.0), (4.0, 2.0), (16.0, 2.0)]).unwrap();
        assert_abs_diff_eq!(c.exponent, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.prefactor, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(
            fit_power_law(&[(1.0, 1.0), (2.0, 2.0)]),
            Err(Error::InsufficientData { needed: 3, got: 2 })
        ));
        assert!(matches!(
            fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
            Err(Error::NonPositiveData { index: 1 })
        ));
    }

    proptest! {
        #[test]
        fn scale_covariant(i in 0.0f64..1e6, v in 1e-6f64..1e6, c in 1e-3f64..1e3) {
            let a = phase_resolution(i, v).unwrap().s;
            let b = phase_resolution(c * i, c * v).unwrap().s;
            prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
            let pr = phase_resolution(i, v).unwrap();
            prop_assert!((pr.s * pr.s * pr.var_x - pr.intensity_y).abs() <= 1e-12 * i.max(1.0));
        }

        #[test]
        fn recovers_planted_exponent(exp in -1.0f64..1.0, pre in 0.01f64..100.0, n0 in 1.0f64..10.0) {
            let pts: Vec<(f64, f64)> =
                (0..6).map(|k| { let n = n0 * 2f64.powi(k); (n, pre * n.powf(exp)) }).collect();
            let f = fit_power_law(&pts).unwrap();
            prop_assert!((f.exponent - exp).abs() < 1e-6);
            prop_assert!((f.prefactor / pre - 1.0).abs() < 1e-6);
        }

        #[test]
        fn spectral_is_pointwise(perm_seed in 0usize..1000, vals in proptest::collection::vec((0.01f64..10.0, 0.0f64..10.0), 3..20)) {
            let n = vals.len();
            let sp = SpectraInput {
                frequencies: (0..n).map(|k| k as f64).collect(),
                squeezed: vals.iter().map(|p| p.0).collect(),
                intensity: vals.iter().map(|p| p.1).collect(),
                ..Default::default()
            };
            let s = spectral_phase_resolution(&sp, DistanceMeasure::Intensity).unwrap();
            // rotate the frequency order
            let k = perm_seed % n;
            let rot = |v: &Vec<f64>| { let mut r = v.clone(); r.rotate_left(k); r };
            let sp2 = SpectraInput {
                frequencies: rot(&sp.frequencies),
                squeezed: rot(&sp.squeezed),
                intensity: rot(&sp.intensity),
                ..Default::default()
            };
            let s2 = spectral_phase_resolution(&sp2, DistanceMeasure::Intensity).unwrap();
            prop_assert_eq!(rot(&s), s2);
        }
    }
}
