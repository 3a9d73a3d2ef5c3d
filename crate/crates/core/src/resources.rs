// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Occupations, two-mode reduced states, concurrence and ℓ1 coherence.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{Mode, OccupationState};
use crate::linalg::{hermiticity_error, singular_values, sqrt_psd, Mat4};
use crate::propagator::DensityMatrix;

/// Most negative eigenvalue of a reduced state accepted by [`concurrence`].
pub const NEGATIVITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ResourceError {
    #[error("invalid two-body state: {0}")]
    InvalidState(String),
    #[error("reduced state has eigenvalue {0:.3e}; concurrence is not reliable")]
    NotPositive(f64),
}

/// Which two modes are kept; the third is traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pair {
    #[serde(rename = "12")]
    P12,
    #[serde(rename = "1d")]
    P1d,
    #[serde(rename = "2d")]
    P2d,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P1d, Pair::P2d];

    /// `(first kept, second kept, traced)`.
    pub fn modes(self) -> (Mode, Mode, Mode) {
        match self {
            Pair::P12 => (Mode::F1, Mode::F2, Mode::Dot),
            Pair::P1d => (Mode::F1, Mode::Dot, Mode::F2),
            Pair::P2d => (Mode::F2, Mode::Dot, Mode::F1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::P12 => "12",
            Pair::P1d => "1d",
            Pair::P2d => "2d",
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Reduced state of two modes in the basis `|00⟩, |01⟩, |10⟩, |11⟩`
/// (index `2·k_first + k_second`).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyState {
    pub entries: Mat4,
    pub pair: Pair,
}

impl TwoBodyState {
    /// Validates Hermiticity and unit trace at 1e-8.
    pub fn new(entries: Mat4, pair: Pair) -> Result<Self, ResourceError> {
        let s = Self { entries, pair };
        s.validate(1e-8)?;
        Ok(s)
    }

    pub fn validate(&self, tol: f64) -> Result<(), ResourceError> {
        if self.entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ResourceError::InvalidState("non-finite entry".into()));
        }
        let herm = hermiticity_error(&self.entries);
        if herm > tol {
            return Err(ResourceError::InvalidState(format!("Hermiticity error {herm:.3e}")));
        }
        let tr = (self.entries.trace() - Complex64::new(1.0, 0.0)).norm();
        if tr > tol {
            return Err(ResourceError::InvalidState(format!("trace error {tr:.3e}")));
        }
        Ok(())
    }
}

/// Sums the coefficients over equal bra and ket occupation of the traced
/// mode. No reordering signs are introduced.
pub fn partial_trace_pair(rho: &DensityMatrix, pair: Pair) -> TwoBodyState {
    let (first, second, traced) = pair.modes();
    let mut out = Mat4::zeros();
    for k in OccupationState::all() {
        for m in OccupationState::all() {
            if k.occupation(traced) != m.occupation(traced) {
                continue;
            }
            let r = 2 * k.occupation(first) as usize + k.occupation(second) as usize;
            let s = 2 * m.occupation(first) as usize + m.occupation(second) as usize;
            out[(r, s)] += rho.coefficients[(k.index(), m.index())];
        }
    }
    TwoBodyState { entries: out, pair }
}

/// `(⟨n̂1⟩, ⟨n̂2⟩, ⟨n̂d⟩)`.
pub fn occupations(rho: &DensityMatrix) -> (f64, f64, f64) {
    let mut n = [0.0; 3];
    for s in OccupationState::all() {
        let p = rho.coefficients[(s.index(), s.index())].re;
        n[0] += s.n1 as f64 * p;
        n[1] += s.n2 as f64 * p;
        n[2] += s.nd as f64 * p;
    }
    (n[0], n[1], n[2])
}

/// σ_y ⊗ σ_y in the two-mode basis.
fn spin_flip() -> Mat4 {
    let mut y = Mat4::zeros();
    let one = Complex64::new(1.0, 0.0);
    y[(0, 3)] = -one;
    y[(3, 0)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    y
}

/// Wootters concurrence `max(0, ϖ1 − ϖ2 − ϖ3 − ϖ4)`.
///
/// The ϖ are the singular values of `√σ (σy⊗σy) conj(√σ)`, which equal the
/// square roots of the eigenvalues of `σ (σy⊗σy) σ* (σy⊗σy)` but stay
/// accurate when several of them vanish.
pub fn concurrence(sigma: &TwoBodyState) -> Result<f64, ResourceError> {
    sigma.validate(1e-8)?;
    let (root, min_eig) = sqrt_psd(&sigma.entries);
    if min_eig < -NEGATIVITY_TOLERANCE {
        return Err(ResourceError::NotPositive(min_eig));
    }
    let x = root * spin_flip() * root.conjugate();
    let w = singular_values(&x);
    Ok((w[0] - w[1] - w[2] - w[3]).max(0.0))
}

/// Sum of the moduli of the 12 off-diagonal entries.
pub fn l1_coherence(sigma: &TwoBodyState) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += sigma.entries[(i, j)].norm();
            }
        }
    }
    s
}

/// Concurrence and ℓ1 coherence of all three pairs, ordered as [`Pair::ALL`].
pub fn pair_resources(rho: &DensityMatrix) -> Result<([f64; 3], [f64; 3]), ResourceError> {
    let mut conc = [0.0; 3];
    let mut l1 = [0.0; 3];
    for (k, pair) in Pair::ALL.iter().enumerate() {
        let sigma = partial_trace_pair(rho, *pair);
        conc[k] = concurrence(&sigma)?;
        l1[k] = l1_coherence(&sigma);
    }
    Ok((conc, l1))
}
