use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)] // std float methods shadow it when std is linked
use num_traits::Float;

use super::{Amplitudes, Occupation};
use crate::{Error, Result, C64};

/// A single creation or annihilation operator on one mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub fn a(mode: usize) -> Self {
        Ladder {
            mode,
            dagger: false,
        }
    }

    pub fn a_dag(mode: usize) -> Self {
        Ladder { mode, dagger: true }
    }

    /// Act on a basis vector: `a|n> = √n |n−1>`, `a†|n> = √(n+1) |n+1>`.
    #[inline]
    fn act(&self, occ: &mut Occupation) -> f64 {
        let n = occ.get(self.mode);
        if self.dagger {
            occ.set(self.mode, n + 1);
            ((n + 1) as f64).sqrt()
        } else if n == 0 {
            0.0
        } else {
            occ.set(self.mode, n - 1);
            (n as f64).sqrt()
        }
    }
}

/// `coeff · f₁ f₂ … fₖ`, factors written left to right; the rightmost acts
/// first on a ket.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: C64,
    pub factors: Vec<Ladder>,
}

impl Monomial {
    /// Apply to a basis vector. Returns the image and its coefficient, or
    /// `None` when the result vanishes.
    #[inline]
    pub fn apply(&self, occ: &Occupation) -> Option<(Occupation, C64)> {
        let mut out = *occ;
        let mut c = self.coeff;
        for f in self.factors.iter().rev() {
            let m = f.act(&mut out);
            if m == 0.0 {
                return None;
            }
            c *= m;
        }
        Some((out, c))
    }

    fn adjoint(&self) -> Monomial {
        Monomial {
            coeff: self.coeff.conj(),
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Ladder {
                    mode: f.mode,
                    dagger: !f.dagger,
                })
                .collect(),
        }
    }
}

/// A polynomial in ladder operators: a sum of [`Monomial`]s.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Operator {
    terms: Vec<Monomial>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Operator::scalar(C64::new(1.0, 0.0))
    }

    pub fn scalar(c: C64) -> Self {
        Operator {
            terms: vec![Monomial {
                coeff: c,
                factors: Vec::new(),
            }],
        }
    }

    pub fn a(mode: usize) -> Self {
        Operator::from(Ladder::a(mode))
    }

    pub fn a_dag(mode: usize) -> Self {
        Operator::from(Ladder::a_dag(mode))
    }

    /// `a†a` on one mode.
    pub fn number(mode: usize) -> Self {
        Operator::a_dag(mode) * Operator::a(mode)
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            terms: self.terms.iter().map(Monomial::adjoint).collect(),
        }
    }

    pub fn scale(mut self, c: C64) -> Operator {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|f| f.mode))
            .max()
    }
}

impl From<Ladder> for Operator {
    fn from(l: Ladder) -> Self {
        Operator {
            terms: vec![Monomial {
                coeff: C64::new(1.0, 0.0),
                factors: vec![l],
            }],
        }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(mut self, rhs: Operator) -> Operator {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        self + (-rhs)
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        self.mul(&rhs)
    }
}

impl Mul<&Operator> for Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for l in &self.terms {
            for r in &rhs.terms {
                let mut factors = l.factors.clone();
                factors.extend_from_slice(&r.factors);
                terms.push(Monomial {
                    coeff: l.coeff * r.coeff,
                    factors,
                });
            }
        }
        Operator { terms }
    }
}

impl Mul<Operator> for C64 {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        rhs.scale(self)
    }
}

impl Mul<Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        rhs.scale(C64::new(self, 0.0))
    }
}

/// `<ψ|op|ψ>` for any amplitude storage.
///
/// Images that land outside the stored space contribute nothing, i.e. the
/// result is the expectation of the operator projected onto the truncated
/// space.
pub fn expectation<S: Amplitudes + ?Sized>(state: &S, op: &Operator) -> Result<C64> {
    if let Some(m) = op.max_mode() {
        if m >= state.n_modes() {
            return Err(Error::ModeOutOfRange {
                mode: m,
                modes: state.n_modes(),
            });
        }
    }
    let mut acc = C64::new(0.0, 0.0);
    state.for_each_nonzero(&mut |occ, amp| {
        for term in &op.terms {
            if let Some((img, c)) = term.apply(occ) {
                let bra = state.amplitude(&img);
                if bra.re != 0.0 || bra.im != 0.0 {
                    acc += bra.conj() * c * amp;
                }
            }
        }
    });
    Ok(acc)
}
