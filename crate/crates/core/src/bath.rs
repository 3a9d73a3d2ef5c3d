// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Fermionic bath with spectral density `J(ω) = γ ω^s ωc^{1-s} e^{-ω/ωc}`:
//! correlation functions α±(t) in closed form and by quadrature, and the
//! running memory integrals `G±_jl(t) = ∫_0^t α±(u) e^{-iu(E_j-E_l)} du`.

use std::fmt;

use nalgebra::SVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::Spectrum;
use crate::linalg::{Op8, ZERO};
use crate::quadrature::{self, QuadratureError, Tolerance};
use crate::special::{gamma, hurwitz_zeta, SpecialError};

/// Quadrature oracle upper limit, in units of ωc.
pub const CUTOFF_MULTIPLE: f64 = 40.0;

#[derive(Debug, Error, PartialEq)]
pub enum BathError {
    #[error("invalid bath parameter: {0}")]
    InvalidParameter(String),
    #[error("spectral density is defined for ω ≥ 0, got {0}")]
    NegativeFrequency(f64),
    #[error("time must be ≥ 0, got {0}")]
    NegativeTime(f64),
    #[error("memory step must be ≥ 0, got {0}")]
    NegativeStep(f64),
    #[error("memory coefficients were built for a different spectrum")]
    SpectrumMismatch,
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Bath temperature; the chemical potential is fixed at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Temperature {
    Zero,
    /// Inverse temperature β.
    Beta(f64),
}

impl Temperature {
    /// β, with `inf` at zero temperature.
    pub fn beta(self) -> f64 {
        match self {
            Temperature::Zero => f64::INFINITY,
            Temperature::Beta(b) => b,
        }
    }

    /// Maps `inf` to [`Temperature::Zero`].
    pub fn from_beta(beta: f64) -> Self {
        if beta.is_infinite() && beta > 0.0 {
            Temperature::Zero
        } else {
            Temperature::Beta(beta)
        }
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Temperature::Zero => f.write_str("T0"),
            Temperature::Beta(b) => write!(f, "beta{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    /// System–bath coupling γ; zero switches the bath off.
    pub gamma: f64,
    /// Ohmicity exponent s.
    pub s: f64,
    pub omega_c: f64,
    pub temperature: Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl BathParams {
    pub fn new(gamma: f64, s: f64, omega_c: f64, temperature: Temperature) -> Result<Self, BathError> {
        let b = Self {
            gamma,
            s,
            omega_c,
            temperature,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), BathError> {
        let bad = |m: String| Err(BathError::InvalidParameter(m));
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return bad(format!("gamma must be finite and ≥ 0, got {}", self.gamma));
        }
        if !(self.s > 0.0) || !self.s.is_finite() {
            return bad(format!("s must be finite and > 0, got {}", self.s));
        }
        if !(self.omega_c > 0.0) || !self.omega_c.is_finite() {
            return bad(format!("omega_c must be finite and > 0, got {}", self.omega_c));
        }
        if let Temperature::Beta(beta) = self.temperature {
            if !(beta > 0.0) || !beta.is_finite() {
                return bad(format!("beta must be finite and > 0, got {beta}"));
            }
        }
        Ok(())
    }

    /// Same bath with a different coupling.
    pub fn with_gamma(self, gamma: f64) -> Self {
        Self { gamma, ..self }
    }
}

/// Fermi–Dirac occupation at zero chemical potential.
pub fn fermi(omega: f64, temperature: Temperature) -> f64 {
    match temperature {
        Temperature::Zero => {
            if omega > 0.0 {
                0.0
            } else if omega < 0.0 {
                1.0
            } else {
                0.5
            }
        }
        Temperature::Beta(beta) => {
            let x = beta * omega;
            if x > 0.0 {
                let e = (-x).exp();
                e / (1.0 + e)
            } else {
                1.0 / (1.0 + x.exp())
            }
        }
    }
}

pub fn spectral_density(omega: f64, b: &BathParams) -> Result<f64, BathError> {
    if !(omega >= 0.0) {
        return Err(BathError::NegativeFrequency(omega));
    }
    Ok(density(omega, b))
}

#[inline]
fn density(omega: f64, b: &BathParams) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    b.gamma * omega.powf(b.s) * b.omega_c.powf(1.0 - b.s) * (-omega / b.omega_c).exp()
}

/// `γ ωc² Γ(1+s) / (1 + iωc t)^{1+s}`: the temperature-independent part of α⁻.
fn vacuum_part(t: f64, b: &BathParams, gamma_1s: f64) -> Complex64 {
    let base = Complex64::new(1.0, b.omega_c * t);
    let pow = (-(1.0 + b.s) * base.ln()).exp();
    pow * (b.gamma * b.omega_c * b.omega_c * gamma_1s)
}

fn thermal_part(t: f64, b: &BathParams, beta: f64, gamma_1s: f64) -> Result<Complex64, BathError> {
    let bw = beta * b.omega_c;
    let z = Complex64::new((1.0 + bw) / (2.0 * bw), -t / (2.0 * beta));
    let order = 1.0 + b.s;
    let diff = hurwitz_zeta(order, z)? - hurwitz_zeta(order, z + 0.5)?;
    let prefactor = b.gamma / (4.0 * beta * beta) * (2.0 * bw).powf(1.0 - b.s) * gamma_1s;
    Ok(diff * prefactor)
}

/// Both correlation functions `(α⁺(t), α⁻(t))` in closed form.
pub fn correlation_pair(t: f64, b: &BathParams) -> Result<(Complex64, Complex64), BathError> {
    if !(t >= 0.0) {
        return Err(BathError::NegativeTime(t));
    }
    let gamma_1s = gamma(1.0 + b.s);
    let vacuum = vacuum_part(t, b, gamma_1s);
    match b.temperature {
        Temperature::Zero => Ok((ZERO, vacuum)),
        Temperature::Beta(beta) => {
            let plus = thermal_part(t, b, beta, gamma_1s)?;
            Ok((plus, plus.conj() + vacuum))
        }
    }
}

/// Closed-form α⁺(t) or α⁻(t).
pub fn correlation(sign: Sign, t: f64, b: &BathParams) -> Result<Complex64, BathError> {
    let (plus, minus) = correlation_pair(t, b)?;
    Ok(match sign {
        Sign::Plus => plus,
        Sign::Minus => minus,
    })
}

fn oracle_tolerance() -> Tolerance {
    Tolerance {
        abs: 1e-10,
        rel: 1e-9,
        max_intervals: 400_000,
    }
}

fn oracle_panels(t: f64, b: &BathParams) -> usize {
    // About two oscillations of e^{iωt} per starting panel.
    16 + (CUTOFF_MULTIPLE * b.omega_c * t / (4.0 * std::f64::consts::PI)).ceil() as usize
}

/// Direct quadrature of `∫_0^∞ J(ω) N_F(ω) e^{iωt} dω` (plus) or
/// `∫_0^∞ J(ω) (N_F(ω) + 1) e^{-iωt} dω` (minus), truncated at 40 ωc.
pub fn correlation_quadrature(sign: Sign, t: f64, b: &BathParams) -> Result<Complex64, BathError> {
    if !(t >= 0.0) {
        return Err(BathError::NegativeTime(t));
    }
    if sign == Sign::Plus && b.temperature == Temperature::Zero {
        return Ok(ZERO);
    }
    let integrand = |omega: f64| {
        let occupation = fermi(omega, b.temperature);
        let j = density(omega, b);
        match sign {
            Sign::Plus => Complex64::from_polar(j * occupation, omega * t),
            Sign::Minus => Complex64::from_polar(j * (occupation + 1.0), -omega * t),
        }
    };
    let est = quadrature::integrate(
        integrand,
        0.0,
        CUTOFF_MULTIPLE * b.omega_c,
        oracle_panels(t, b),
        oracle_tolerance(),
    )?;
    Ok(est.value)
}

/// Rough dissipation scale `|∫_0^∞ α⁻(u) du| = ∫_0^∞ J(ω)(N_F(ω)+1)/ω dω`.
/// Diagnostic only.
pub fn dissipation_scale_estimate(b: &BathParams) -> Result<f64, BathError> {
    let est = quadrature::integrate(
        |omega| {
            if omega == 0.0 {
                return ZERO;
            }
            Complex64::new(density(omega, b) * (fermi(omega, b.temperature) + 1.0) / omega, 0.0)
        },
        0.0,
        CUTOFF_MULTIPLE * b.omega_c,
        16,
        oracle_tolerance(),
    )?;
    Ok(est.value.re)
}

/// Source of α±(u) samples for the memory integrals.
pub trait CorrelationKernel {
    /// `(α⁺(u), α⁻(u))`.
    fn alpha(&self, u: f64) -> Result<(Complex64, Complex64), BathError>;
    /// Shortest time scale on which the kernel varies near u = 0.
    fn time_scale(&self) -> f64;
}

impl CorrelationKernel for BathParams {
    fn alpha(&self, u: f64) -> Result<(Complex64, Complex64), BathError> {
        if self.gamma == 0.0 {
            return Ok((ZERO, ZERO));
        }
        correlation_pair(u, self)
    }

    fn time_scale(&self) -> f64 {
        1.0 / self.omega_c
    }
}

/// How each advance of the memory integrals is split into Simpson panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PanelRule {
    /// Exactly this many panels per advance.
    Fixed(usize),
    /// Panel width at most `kappa · (τ + u)` where τ is the kernel time
    /// scale and u the panel start, and at most `0.01 / max|E_j − E_l|`.
    Graded { kappa: f64 },
}

impl Default for PanelRule {
    fn default() -> Self {
        PanelRule::Graded { kappa: 2e-3 }
    }
}

/// Running values of `G±_jl(t)` for one spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryCoefficients {
    pub g_plus: Op8,
    pub g_minus: Op8,
    pub t: f64,
    energies: [f64; 8],
    rule: PanelRule,
}

impl MemoryCoefficients {
    pub fn new(spectrum: &Spectrum) -> Self {
        Self::with_rule(spectrum, PanelRule::default())
    }

    pub fn with_rule(spectrum: &Spectrum, rule: PanelRule) -> Self {
        Self {
            g_plus: Op8::zeros(),
            g_minus: Op8::zeros(),
            t: 0.0,
            energies: spectrum.energies,
            rule,
        }
    }

    pub fn energies(&self) -> &[f64; 8] {
        &self.energies
    }

    fn panel_count<K: CorrelationKernel>(&self, h: f64, kernel: &K) -> usize {
        match self.rule {
            PanelRule::Fixed(n) => n.max(1),
            PanelRule::Graded { kappa } => {
                let spread = self.energies[7] - self.energies[0];
                let mut width = kappa * (kernel.time_scale() + self.t);
                if spread > 0.0 {
                    width = width.min(0.01 / spread);
                }
                ((h / width).ceil() as usize).max(1)
            }
        }
    }

    /// Extends both integrals from `t` to `t + h` by composite Simpson.
    /// A zero step leaves them unchanged.
    pub fn advance<K: CorrelationKernel>(
        &self,
        spectrum: &Spectrum,
        h: f64,
        kernel: &K,
    ) -> Result<Self, BathError> {
        self.advance_to(spectrum, self.t + h, kernel)
    }

    /// Like [`advance`](Self::advance) but lands exactly on `t_end`.
    pub fn advance_to<K: CorrelationKernel>(
        &self,
        spectrum: &Spectrum,
        t_end: f64,
        kernel: &K,
    ) -> Result<Self, BathError> {
        let h = t_end - self.t;
        if !(h >= 0.0) {
            return Err(BathError::NegativeStep(h));
        }
        if spectrum.energies != self.energies {
            return Err(BathError::SpectrumMismatch);
        }
        if h == 0.0 {
            return Ok(self.clone());
        }
        let panels = self.panel_count(h, kernel);
        let width = h / panels as f64;
        let mut next = self.clone();
        let mut accumulate = |u: f64, weight: f64| -> Result<(), BathError> {
            let (ap, am) = kernel.alpha(u)?;
            let phase = SVector::<Complex64, 8>::from_fn(|j, _| {
                Complex64::from_polar(1.0, -u * self.energies[j])
            });
            let outer = phase * phase.adjoint();
            next.g_plus += outer * (ap * weight);
            next.g_minus += outer * (am * weight);
            Ok(())
        };
        let w6 = width / 6.0;
        for k in 0..panels {
            let a = self.t + width * k as f64;
            let end_weight = if k == 0 { w6 } else { 2.0 * w6 };
            accumulate(a, end_weight)?;
            accumulate(a + 0.5 * width, 4.0 * w6)?;
        }
        accumulate(t_end, w6)?;
        next.t = t_end;
        Ok(next)
    }
}
