use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use super::{expectation, Amplitudes, Operator};
use crate::{Result, C64};

/// The field whose quadratures are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Field {
    /// A single mode `a_k`.
    Mode(usize),
    /// The composite mode `a₊ = i(a_j − a_k)/√2` of a signal/idler pair.
    Plus(usize, usize),
}

impl Field {
    /// Annihilation operator of the field; `[A, A†] = 1` in both cases.
    pub fn annihilation(&self) -> Operator {
        match *self {
            Field::Mode(k) => Operator::a(k),
            Field::Plus(j, k) => C64::new(0.0, FRAC_1_SQRT_2) * (Operator::a(j) - Operator::a(k)),
        }
    }

    /// Hermitian quadrature `e^{−iφ}A + e^{iφ}A†`; vacuum variance 1.
    pub fn quadrature(&self, angle: f64) -> Operator {
        let a = self.annihilation();
        let rot = C64::from_polar(1.0, -angle);
        rot * a.clone() + rot.conj() * a.adjoint()
    }

    pub fn max_mode(&self) -> usize {
        match *self {
            Field::Mode(k) => k,
            Field::Plus(j, k) => j.max(k),
        }
    }
}

/// Quadratures used by the oscillator analysis, plus arbitrary rotated
/// quadratures of a single mode.
///
/// `Y2`/`X2` act on mode 0 (the degenerate sub-harmonic `a₁`), `Y3`/`X3`
/// on the composite `a₊` of modes 0 and 1 (signal `a₂`, idler `a₃`).
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum QuadratureSpec {
    /// `a₁ + a₁†`
    Y2,
    /// `−i(a₁† − a₁)`
    X2,
    /// `a₊` itself (not Hermitian)
    Y3,
    /// `−i(a₊† − a₊)`
    X3,
    Generic {
        mode: usize,
        angle: f64,
    },
}

impl QuadratureSpec {
    pub fn field(&self) -> Field {
        match *self {
            QuadratureSpec::Y2 | QuadratureSpec::X2 => Field::Mode(0),
            QuadratureSpec::Y3 | QuadratureSpec::X3 => Field::Plus(0, 1),
            QuadratureSpec::Generic { mode, .. } => Field::Mode(mode),
        }
    }

    pub fn operator(&self) -> Operator {
        match *self {
            QuadratureSpec::Y2 => self.field().quadrature(0.0),
            // −i(A† − A) = e^{iπ/2}A + e^{−iπ/2}A†
            QuadratureSpec::X2 | QuadratureSpec::X3 => self.field().quadrature(-FRAC_PI_2),
            QuadratureSpec::Y3 => self.field().annihilation(),
            QuadratureSpec::Generic { angle, .. } => self.field().quadrature(angle),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        !matches!(self, QuadratureSpec::Y3)
    }
}

/// Moments `<A>`, `<A²>`, `<A†A>` of a field; enough for the variance of
/// every quadrature angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldMoments {
    pub mean: C64,
    pub second: C64,
    pub number: f64,
}

impl FieldMoments {
    /// `Var(e^{−iφ}A + e^{iφ}A†) = 1 + 2(<A†A> − |<A>|²) + 2 Re[e^{−2iφ}(<A²> − <A>²)]`
    pub fn variance(&self, angle: f64) -> f64 {
        let n_c = self.number - self.mean.norm_sqr();
        let m_c = self.second - self.mean * self.mean;
        1.0 + 2.0 * n_c + 2.0 * (C64::from_polar(1.0, -2.0 * angle) * m_c).re
    }

    /// Smallest variance over all quadrature angles.
    pub fn min_variance(&self) -> f64 {
        let n_c = self.number - self.mean.norm_sqr();
        let m_c = self.second - self.mean * self.mean;
        1.0 + 2.0 * n_c - 2.0 * m_c.norm()
    }

    /// Angle at which [`FieldMoments::min_variance`] is reached.
    pub fn squeezed_angle(&self) -> f64 {
        let m_c = self.second - self.mean * self.mean;
        0.5 * (m_c.arg() - core::f64::consts::PI)
    }
}

pub fn field_moments<S: Amplitudes + ?Sized>(state: &S, field: Field) -> Result<FieldMoments> {
    let a = field.annihilation();
    let mean = expectation(state, &a)?;
    let second = expectation(state, &(a.clone() * &a))?;
    let number = expectation(state, &(a.adjoint() * &a))?.re;
    Ok(FieldMoments {
        mean,
        second,
        number,
    })
}

/// First and second moments of a quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureStats {
    /// `Re<Q>` for Hermitian quadratures, `|<Q>|` for `Y3`.
    pub mean: f64,
    /// `<Q†Q> − |<Q>|²`
    pub variance: f64,
    /// `<Q†Q>`
    pub intensity: f64,
}

pub fn quadrature_stats<S: Amplitudes + ?Sized>(
    state: &S,
    q: QuadratureSpec,
) -> Result<QuadratureStats> {
    let op = q.operator();
    let mean = expectation(state, &op)?;
    let intensity = expectation(state, &(op.adjoint() * &op))?.re;
    let variance = (intensity - mean.norm_sqr()).max(0.0);
    let mean = if q.is_hermitian() {
        mean.re
    } else {
        mean.norm()
    };
    Ok(QuadratureStats {
        mean,
        variance,
        intensity,
    })
}
