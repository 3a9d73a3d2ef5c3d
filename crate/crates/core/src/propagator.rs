// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Right-hand side of the time-nonlocal master equation and its fixed-step
//! RK4 integration.
//!
//! The dissipator is assembled in operator form: with `D = V† d† V` the jump
//! matrix in the eigenbasis,
//!
//! ```text
//! L⁺ = V (G⁺ ∘ D) V†,   L⁻ = V (G⁻ ∘ D†) V†,
//! X  = [L⁺ ρ, d] + [L⁻ ρ, d†],
//! dρ/dt = -i[H, ρ] + X + X†.
//! ```

use nalgebra::SVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::bath::{BathError, BathParams, CorrelationKernel, MemoryCoefficients, PanelRule};
use crate::fock::{diagonalize, hamiltonian, ladder_operator, Mode, ModelError, ModelParams, OccupationState, Spectrum};
use crate::linalg::{c, commutator, eigvalsh, hermiticity_error, Op8, I, ZERO};

/// Abort threshold for trace and Hermiticity drift during a run.
pub const BREACH_TOLERANCE: f64 = 1e-6;
/// Abort threshold for the smallest eigenvalue of ρ.
pub const POSITIVITY_FLOOR: f64 = -1e-3;
/// Largest admissible `h · max(bandwidth, ωc)`.
pub const MAX_STEP_PRODUCT: f64 = 0.5;
const DESYNC_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum PropagationError {
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("memory desync: coefficients at t = {memory}, requested t = {requested}")]
    MemoryDesync { memory: f64, requested: f64 },
    #[error("step too coarse: h·max(bandwidth, ωc) = {product:.4} exceeds {MAX_STEP_PRODUCT}")]
    StepTooCoarse { product: f64 },
    #[error("invalid run settings: {0}")]
    InvalidSettings(String),
    #[error("invariant breach at t = {t}: {what}")]
    Breach { t: f64, what: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bath(#[from] BathError),
}

/// Coefficients `A^k_m = ⟨k|ρ|m⟩` in the occupation basis at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub coefficients: Op8,
    pub t: f64,
}

impl DensityMatrix {
    /// Validates at tolerance 1e-8.
    pub fn new(coefficients: Op8, t: f64) -> Result<Self, PropagationError> {
        let rho = Self { coefficients, t };
        rho.validate(1e-8)?;
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn pure(psi: &SVector<Complex64, 8>) -> Result<Self, PropagationError> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(PropagationError::InvalidState(format!("ket norm {norm}")));
        }
        Self::new(psi * psi.adjoint(), 0.0)
    }

    pub fn basis(state: OccupationState) -> Self {
        let mut m = Op8::zeros();
        m[(state.index(), state.index())] = c(1.0);
        Self {
            coefficients: m,
            t: 0.0,
        }
    }

    pub fn trace_error(&self) -> f64 {
        (self.coefficients.trace() - c(1.0)).norm()
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.coefficients)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eigvalsh(&self.coefficients)[0]
    }

    pub fn validate(&self, tol: f64) -> Result<(), PropagationError> {
        let m = &self.coefficients;
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(PropagationError::InvalidState("non-finite entry".into()));
        }
        let herm = self.hermiticity_error();
        if herm > tol {
            return Err(PropagationError::InvalidState(format!("Hermiticity error {herm:.3e}")));
        }
        let tr = self.trace_error();
        if tr > tol {
            return Err(PropagationError::InvalidState(format!("trace error {tr:.3e}")));
        }
        for i in 0..8 {
            if m[(i, i)].re < -tol {
                return Err(PropagationError::InvalidState(format!(
                    "negative population {} at index {i}",
                    m[(i, i)].re
                )));
            }
        }
        Ok(())
    }
}

/// `d†` and `d` in the energy eigenbasis, plus the change of basis.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpMatrices {
    /// `D_jl = ⟨E_j|d†|E_l⟩`.
    pub d_dag_eig: Op8,
    /// `⟨E_j|d|E_l⟩ = conj(D_lj)`.
    pub d_eig: Op8,
    /// `⟨n|E_j⟩`: eigenvectors as columns.
    pub basis_overlap: Op8,
}

impl JumpMatrices {
    /// Sums `(-1)^{k1+k2} ⟨E_j|k1,k2,1⟩⟨k1,k2,0|E_l⟩` over the orbital
    /// occupations.
    pub fn new(spectrum: &Spectrum) -> Self {
        let v = &spectrum.vectors;
        let d_dag_eig = Op8::from_fn(|j, l| {
            let mut acc = ZERO;
            for k1 in 0..2u8 {
                for k2 in 0..2u8 {
                    let sign = if (k1 + k2) % 2 == 0 { 1.0 } else { -1.0 };
                    let up = OccupationState::new(k1, k2, 1).index();
                    let down = OccupationState::new(k1, k2, 0).index();
                    acc += v[(up, j)].conj() * v[(down, l)] * sign;
                }
            }
            acc
        });
        Self {
            d_dag_eig,
            d_eig: d_dag_eig.adjoint(),
            basis_overlap: *v,
        }
    }

    /// `V† d† V` from the ladder operator directly.
    pub fn from_operator(spectrum: &Spectrum) -> Self {
        let v = &spectrum.vectors;
        let d_dag_eig = v.adjoint() * ladder_operator(Mode::Dot, true) * v;
        Self {
            d_dag_eig,
            d_eig: d_dag_eig.adjoint(),
            basis_overlap: *v,
        }
    }
}

/// Precomputed operators for repeated right-hand-side evaluations.
#[derive(Debug, Clone)]
pub struct Generator {
    h: Op8,
    d: Op8,
    d_dag: Op8,
    jm: JumpMatrices,
}

impl Generator {
    pub fn new(p: &ModelParams, jm: JumpMatrices) -> Self {
        Self {
            h: hamiltonian(p),
            d: ladder_operator(Mode::Dot, false),
            d_dag: ladder_operator(Mode::Dot, true),
            jm,
        }
    }

    /// `(L⁺, L⁻)` in the occupation basis.
    pub fn dissipators(&self, mc: &MemoryCoefficients) -> (Op8, Op8) {
        let v = &self.jm.basis_overlap;
        let vh = v.adjoint();
        let lp = v * mc.g_plus.component_mul(&self.jm.d_dag_eig) * vh;
        let lm = v * mc.g_minus.component_mul(&self.jm.d_eig) * vh;
        (lp, lm)
    }

    pub fn apply(&self, rho: &Op8, lp: &Op8, lm: &Op8) -> Op8 {
        let x = commutator(&(lp * rho), &self.d) + commutator(&(lm * rho), &self.d_dag);
        commutator(&self.h, rho) * (-I) + x + x.adjoint()
    }
}

fn check_sync(t: f64, mc: &MemoryCoefficients) -> Result<(), PropagationError> {
    if (mc.t - t).abs() > DESYNC_TOLERANCE {
        return Err(PropagationError::MemoryDesync {
            memory: mc.t,
            requested: t,
        });
    }
    Ok(())
}

/// `dρ/dt` at time `t`; `mc` must hold `G±(t)`.
pub fn master_rhs(
    t: f64,
    rho: &DensityMatrix,
    mc: &MemoryCoefficients,
    jm: &JumpMatrices,
    p: &ModelParams,
) -> Result<Op8, PropagationError> {
    check_sync(t, mc)?;
    let g = Generator::new(p, jm.clone());
    let (lp, lm) = g.dissipators(mc);
    Ok(g.apply(&rho.coefficients, &lp, &lm))
}

/// The same right-hand side evaluated entry by entry from occupation-basis
/// coefficient formulas, without forming any operator products. Slow; kept
/// as an independent cross-check of [`master_rhs`].
pub fn master_rhs_coefficients(
    t: f64,
    rho: &DensityMatrix,
    mc: &MemoryCoefficients,
    jm: &JumpMatrices,
    p: &ModelParams,
) -> Result<Op8, PropagationError> {
    check_sync(t, mc)?;
    let a = &rho.coefficients;
    let v = &jm.basis_overlap;
    // W = V† A, so that Y^ℓ_n(j,l) = V[ℓ,j] W[l,n].
    let w = v.adjoint() * a;
    let idx = |k1: u8, k2: u8, kd: u8| OccupationState::new(k1, k2, kd).index();
    let sgn = |n: u8| if n % 2 == 0 { 1.0 } else { -1.0 };
    // C_{x,y,j} and C̃_{x,y,j}
    let cc = |x: u8, y: u8, j: u8| -> f64 {
        if x == j && y == 1 - j {
            sgn(x) * (((x + 1 - j) * (y + j)) as f64).sqrt()
        } else {
            0.0
        }
    };
    let ct = |x: u8, y: u8, j: u8| -> f64 {
        if x == 1 - j && y == 1 - j {
            sgn(x) * (((x + j) * (y + j)) as f64).sqrt()
        } else {
            0.0
        }
    };
    // Shifted index helper; callers only use it where the Kronecker deltas
    // keep the result inside {0, 1}.
    let sh = |x: u8, delta: i8| (x as i8 + delta) as u8;

    let mut out = Op8::zeros();
    let mut x_diss = Op8::zeros();
    for l_state in OccupationState::all() {
        for n_state in OccupationState::all() {
            let (l1, l2, ld) = (l_state.n1, l_state.n2, l_state.nd);
            let (n1, n2, nd) = (n_state.n1, n_state.n2, n_state.nd);
            let a_ln = a[(l_state.index(), n_state.index())];

            // H1 + H2 (the constant -ε_j/2 shifts cancel in the commutator).
            let diag = p.eps1 * (l1 as f64 - n1 as f64)
                + p.eps2 * (l2 as f64 - n2 as f64)
                + p.eps_d * (ld as f64 - nd as f64);
            let mut comm = a_ln * diag;

            // H3
            for j in 0..2u8 {
                let s = sgn(j);
                let up = 1 - 2 * j as i8; // -2j + 1
                let dn = 2 * j as i8 - 1; // 2j - 1
                let mut term = ZERO;
                let k = cc(l1, ld, j);
                if k != 0.0 {
                    term += a[(idx(sh(l1, up), l2, sh(ld, dn)), n_state.index())] * (p.lambda1 * sgn(l2) * k);
                }
                let k = cc(n1, nd, j);
                if k != 0.0 {
                    term -= a[(l_state.index(), idx(sh(n1, up), n2, sh(nd, dn)))] * (p.lambda1 * sgn(n2) * k);
                }
                let k = ct(l1, ld, j);
                if k != 0.0 {
                    term += a[(idx(sh(l1, dn), l2, sh(ld, dn)), n_state.index())] * (p.lambda_t1 * sgn(l2) * k);
                }
                let k = ct(n1, nd, j);
                if k != 0.0 {
                    term -= a[(l_state.index(), idx(sh(n1, dn), n2, sh(nd, dn)))] * (p.lambda_t1 * sgn(n2) * k);
                }
                let k = cc(l2, ld, j);
                if k != 0.0 {
                    term += a[(idx(l1, sh(l2, up), sh(ld, dn)), n_state.index())] * (p.lambda2 * k);
                }
                let k = cc(n2, nd, j);
                if k != 0.0 {
                    term -= a[(l_state.index(), idx(n1, sh(n2, up), sh(nd, dn)))] * (p.lambda2 * k);
                }
                let k = ct(l2, ld, j);
                if k != 0.0 {
                    term += a[(idx(l1, sh(l2, dn), sh(ld, dn)), n_state.index())] * (p.lambda_t2 * k);
                }
                let k = ct(n2, nd, j);
                if k != 0.0 {
                    term -= a[(l_state.index(), idx(n1, sh(n2, dn), sh(nd, dn)))] * (p.lambda_t2 * k);
                }
                comm += term * s;
            }
            out[(l_state.index(), n_state.index())] = comm * (-I);

            // Dissipative terms before adding the Hermitian conjugate.
            let mut diss = ZERO;
            for j in 0..8 {
                for l in 0..8 {
                    let y = |row: usize, col: usize| v[(row, j)] * w[(l, col)];
                    let gp = mc.g_plus[(j, l)] * jm.d_dag_eig[(j, l)];
                    let gm = mc.g_minus[(j, l)] * jm.d_eig[(j, l)];
                    if gp != ZERO {
                        let mut bracket = ZERO;
                        if nd == 1 {
                            bracket += y(l_state.index(), idx(n1, n2, 0)) * sgn(n1 + n2);
                        }
                        if ld == 0 {
                            bracket -= y(idx(l1, l2, 1), n_state.index()) * sgn(l1 + l2);
                        }
                        diss += gp * bracket;
                    }
                    if gm != ZERO {
                        let mut bracket = ZERO;
                        if nd == 0 {
                            bracket += y(l_state.index(), idx(n1, n2, 1)) * sgn(n1 + n2);
                        }
                        if ld == 1 {
                            bracket -= y(idx(l1, l2, 0), n_state.index()) * sgn(l1 + l2);
                        }
                        diss += gm * bracket;
                    }
                }
            }
            x_diss[(l_state.index(), n_state.index())] = diss;
        }
    }
    for i in 0..8 {
        for j in 0..8 {
            out[(i, j)] += x_diss[(i, j)] + x_diss[(j, i)].conj();
        }
    }
    Ok(out)
}

/// Per-sample invariant diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub trace_err: f64,
    pub herm_err: f64,
    pub min_eig: f64,
}

impl Diagnostics {
    pub fn of(rho: &DensityMatrix) -> Self {
        Self {
            trace_err: rho.trace_error(),
            herm_err: rho.hermiticity_error(),
            min_eig: rho.min_eigenvalue(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory holds the initial sample")
    }

    /// The sample whose time is closest to `t`.
    pub fn at(&self, t: f64) -> &DensityMatrix {
        let k = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(k, _)| k)
            .expect("trajectory holds the initial sample");
        &self.states[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub horizon: f64,
    pub step: f64,
    pub sample_every: usize,
    pub panels: PanelRule,
}

impl RunSettings {
    pub fn new(horizon: f64, step: f64, sample_every: usize) -> Self {
        Self {
            horizon,
            step,
            sample_every,
            panels: PanelRule::default(),
        }
    }

    /// Default step `min(0.01, 0.25 / max(bandwidth, ωc))`, sampled every
    /// 0.05 time units.
    pub fn default_for(horizon: f64, bandwidth: f64, omega_c: f64) -> Self {
        let step = 0.01_f64.min(0.25 / bandwidth.max(omega_c));
        let sample_every = ((0.05 / step).round() as usize).max(1);
        Self::new(horizon, step, sample_every)
    }

    /// Number of steps; the horizon is rounded to a whole number of steps.
    pub fn steps(&self) -> usize {
        (self.horizon / self.step - 1e-9).ceil().max(0.0) as usize
    }

    fn validate(&self) -> Result<(), PropagationError> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(PropagationError::InvalidSettings(format!("step must be > 0, got {}", self.step)));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(PropagationError::InvalidSettings(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        if self.sample_every == 0 {
            return Err(PropagationError::InvalidSettings("sample_every must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Integrates from `rho0` with the bath `b`.
pub fn evolve(
    rho0: &DensityMatrix,
    p: &ModelParams,
    b: &BathParams,
    settings: &RunSettings,
) -> Result<Trajectory, PropagationError> {
    p.validate()?;
    b.validate()?;
    let spectrum = diagonalize(&hamiltonian(p))?;
    let product = settings.step * spectrum.bandwidth().max(b.omega_c);
    if product > MAX_STEP_PRODUCT {
        return Err(PropagationError::StepTooCoarse { product });
    }
    evolve_with_kernel(rho0, p, &spectrum, b, settings)
}

/// Integrates with an arbitrary correlation kernel. The step-size check on
/// the bath cutoff is the caller's responsibility.
pub fn evolve_with_kernel<K: CorrelationKernel>(
    rho0: &DensityMatrix,
    p: &ModelParams,
    spectrum: &Spectrum,
    kernel: &K,
    settings: &RunSettings,
) -> Result<Trajectory, PropagationError> {
    settings.validate()?;
    rho0.validate(1e-12)?;
    let product = settings.step * spectrum.bandwidth();
    if product > MAX_STEP_PRODUCT {
        return Err(PropagationError::StepTooCoarse { product });
    }
    let gen = Generator::new(p, JumpMatrices::new(spectrum));
    let h = settings.step;
    let steps = settings.steps();

    let mut rho = rho0.coefficients;
    let mut mc = MemoryCoefficients::with_rule(spectrum, settings.panels);
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![DensityMatrix { coefficients: rho, t: 0.0 }],
        diagnostics: vec![Diagnostics::of(&DensityMatrix { coefficients: rho, t: 0.0 })],
    };
    let (mut lp0, mut lm0) = gen.dissipators(&mc);
    for k in 0..steps {
        let t = k as f64 * h;
        let t_next = (k + 1) as f64 * h;
        let mc_half = mc.advance_to(spectrum, t + 0.5 * h, kernel)?;
        let mc_full = mc_half.advance_to(spectrum, t_next, kernel)?;
        let (lp_half, lm_half) = gen.dissipators(&mc_half);
        let (lp1, lm1) = gen.dissipators(&mc_full);

        let k1 = gen.apply(&rho, &lp0, &lm0);
        let k2 = gen.apply(&(rho + k1 * c(0.5 * h)), &lp_half, &lm_half);
        let k3 = gen.apply(&(rho + k2 * c(0.5 * h)), &lp_half, &lm_half);
        let k4 = gen.apply(&(rho + k3 * c(h)), &lp1, &lm1);
        rho += (k1 + (k2 + k3) * c(2.0) + k4) * c(h / 6.0);

        mc = mc_full;
        lp0 = lp1;
        lm0 = lm1;

        let sampled = (k + 1) % settings.sample_every == 0 || k + 1 == steps;
        let state = DensityMatrix {
            coefficients: rho,
            t: t_next,
        };
        let trace_err = state.trace_error();
        let herm_err = state.hermiticity_error();
        if !(trace_err <= BREACH_TOLERANCE) {
            return Err(PropagationError::Breach {
                t: t_next,
                what: format!("trace error {trace_err:.3e}"),
            });
        }
        if !(herm_err <= BREACH_TOLERANCE) {
            return Err(PropagationError::Breach {
                t: t_next,
                what: format!("Hermiticity error {herm_err:.3e}"),
            });
        }
        if sampled {
            let diag = Diagnostics::of(&state);
            if diag.min_eig < POSITIVITY_FLOOR {
                return Err(PropagationError::Breach {
                    t: t_next,
                    what: format!("minimum eigenvalue {:.3e}", diag.min_eig),
                });
            }
            traj.times.push(t_next);
            traj.states.push(state);
            traj.diagnostics.push(diag);
        }
    }
    Ok(traj)
}
