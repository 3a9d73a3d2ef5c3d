// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Three-mode fermionic Fock space (orbitals f1, f2 and the dot d), ladder
//! operators, the generalized dot–fermion Hamiltonian, and its spectrum.
//!
//! Basis kets are `|n1,n2,nd⟩ = (f1†)^n1 (f2†)^n2 (d†)^nd |0⟩`, stored at
//! index `n1 + 2·n2 + 4·nd`. Every fermionic sign in the crate follows from
//! this ordering.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::SVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{c, hermiticity_error, jacobi_eigh, Op8, ONE};

pub const DIM: usize = 8;

/// Energies closer than this (relative to max(1, |E|)) are ordered by parity
/// and then by index.
const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("model parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("operator is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("closed-form spectrum requires eps1 == eps2 (got {0} and {1})")]
    UnequalLevels(f64, f64),
    #[error("closed-form spectrum is only tabulated for Majorana and Regular species")]
    CustomSpecies,
    #[error("closed-form normalization degenerates ({0}); use `diagonalize`")]
    DegenerateNormalization(&'static str),
}

/// One of the three fermionic modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    F1,
    F2,
    Dot,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::F1, Mode::F2, Mode::Dot];

    /// Bit position in the basis index.
    pub fn bit(self) -> usize {
        match self {
            Mode::F1 => 0,
            Mode::F2 => 1,
            Mode::Dot => 2,
        }
    }
}

/// Occupation-number basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OccupationState {
    pub n1: u8,
    pub n2: u8,
    pub nd: u8,
}

impl OccupationState {
    pub fn new(n1: u8, n2: u8, nd: u8) -> Self {
        assert!(n1 <= 1 && n2 <= 1 && nd <= 1, "occupations are 0 or 1");
        Self { n1, n2, nd }
    }

    pub fn from_index(index: usize) -> Self {
        assert!(index < DIM, "basis index out of range");
        Self {
            n1: (index & 1) as u8,
            n2: ((index >> 1) & 1) as u8,
            nd: ((index >> 2) & 1) as u8,
        }
    }

    pub fn index(self) -> usize {
        self.n1 as usize + 2 * self.n2 as usize + 4 * self.nd as usize
    }

    pub fn occupation(self, mode: Mode) -> u8 {
        match mode {
            Mode::F1 => self.n1,
            Mode::F2 => self.n2,
            Mode::Dot => self.nd,
        }
    }

    pub fn particle_number(self) -> u8 {
        self.n1 + self.n2 + self.nd
    }

    pub fn parity(self) -> Parity {
        if self.particle_number() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn all() -> impl Iterator<Item = OccupationState> {
        (0..DIM).map(OccupationState::from_index)
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.n1, self.n2, self.nd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_index(index: usize) -> Parity {
        OccupationState::from_index(index).parity()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Matrix of `c_mode` (or `c_mode†` when `dagger`) in the occupation basis.
pub fn ladder_operator(mode: Mode, dagger: bool) -> Op8 {
    let mut op = Op8::zeros();
    let bit = mode.bit();
    for ket in 0..DIM {
        let occupied = (ket >> bit) & 1 == 1;
        if occupied == dagger {
            continue;
        }
        let bra = ket ^ (1 << bit);
        // Jordan–Wigner string over the modes created before this one.
        let passed = (ket & ((1 << bit) - 1)).count_ones();
        let sign = if passed % 2 == 0 { 1.0 } else { -1.0 };
        op[(bra, ket)] = c(sign);
    }
    op
}

pub fn number_operator(mode: Mode) -> Op8 {
    ladder_operator(mode, true) * ladder_operator(mode, false)
}

/// `N̂ = n̂1 + n̂2 + n̂d`.
pub fn total_number_operator() -> Op8 {
    Op8::from_diagonal(&SVector::from_fn(|i, _| {
        c(OccupationState::from_index(i).particle_number() as f64)
    }))
}

/// `P = (-1)^N̂`.
pub fn parity_operator() -> Op8 {
    Op8::from_diagonal(&SVector::from_fn(|i, _| match Parity::of_index(i) {
        Parity::Even => ONE,
        Parity::Odd => -ONE,
    }))
}

/// Indices of the parity-ordered basis `{0̃, f1†d†, f2†d†, f1†f2†, d†, f1†,
/// f2†, f1†f2†d†}` in storage order.
pub const PARITY_ORDER: [usize; 8] = [0, 5, 6, 3, 4, 1, 2, 7];

/// Re-expresses `op` in the parity-ordered basis; the even block is the top
/// left 4×4 and the odd block the bottom right.
pub fn to_parity_order(op: &Op8) -> Op8 {
    Op8::from_fn(|i, j| op[(PARITY_ORDER[i], PARITY_ORDER[j])])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Species {
    Majorana,
    Regular,
    Custom,
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::Majorana => "majorana",
            Species::Regular => "regular",
            Species::Custom => "custom",
        })
    }
}

/// Parameters of the generalized Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub eps_d: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Anomalous (pairing) couplings `d† f_j†`.
    pub lambda_t1: f64,
    pub lambda_t2: f64,
    pub species: Species,
}

impl ModelParams {
    /// Dot coupled to a Majorana pair: anomalous couplings equal the normal ones.
    pub fn majorana(eps_d: f64, eps1: f64, eps2: f64, lambda1: f64, lambda2: f64) -> Self {
        Self {
            eps_d,
            eps1,
            eps2,
            lambda1,
            lambda2,
            lambda_t1: lambda1,
            lambda_t2: lambda2,
            species: Species::Majorana,
        }
    }

    /// Dot hybridized with two regular orbitals: no anomalous couplings.
    pub fn regular(eps_d: f64, eps1: f64, eps2: f64, lambda1: f64, lambda2: f64) -> Self {
        Self {
            eps_d,
            eps1,
            eps2,
            lambda1,
            lambda2,
            lambda_t1: 0.0,
            lambda_t2: 0.0,
            species: Species::Regular,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        eps_d: f64,
        eps1: f64,
        eps2: f64,
        lambda1: f64,
        lambda2: f64,
        lambda_t1: f64,
        lambda_t2: f64,
    ) -> Self {
        Self {
            eps_d,
            eps1,
            eps2,
            lambda1,
            lambda2,
            lambda_t1,
            lambda_t2,
            species: Species::Custom,
        }
    }

    /// Builds parameters for `species`, overriding the anomalous couplings
    /// where the species fixes them.
    pub fn for_species(species: Species, base: &ModelParams) -> Self {
        match species {
            Species::Majorana => {
                Self::majorana(base.eps_d, base.eps1, base.eps2, base.lambda1, base.lambda2)
            }
            Species::Regular => {
                Self::regular(base.eps_d, base.eps1, base.eps2, base.lambda1, base.lambda2)
            }
            Species::Custom => Self { species, ..*base },
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            ("eps_d", self.eps_d),
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda_t1", self.lambda_t1),
            ("lambda_t2", self.lambda_t2),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::NonFinite(name));
            }
        }
        Ok(())
    }
}

/// `H = ε_d n̂_d + Σ_j ε_j (n̂_j − 1/2) + Σ_j (λ_j d† f_j + λ̃_j d† f_j† + H.c.)`.
pub fn hamiltonian(p: &ModelParams) -> Op8 {
    let d_dag = ladder_operator(Mode::Dot, true);
    let identity = Op8::identity();
    let mut h = number_operator(Mode::Dot) * c(p.eps_d);
    for (mode, eps, lambda, lambda_t) in [
        (Mode::F1, p.eps1, p.lambda1, p.lambda_t1),
        (Mode::F2, p.eps2, p.lambda2, p.lambda_t2),
    ] {
        h += (number_operator(mode) - identity * c(0.5)) * c(eps);
        let hop = d_dag * ladder_operator(mode, false) * c(lambda)
            + d_dag * ladder_operator(mode, true) * c(lambda_t);
        h += hop + hop.adjoint();
    }
    h
}

/// Eigen-decomposition with parity labels, sorted by ascending energy
/// (near-ties: even parity first, then original index).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; 8],
    /// Eigenvectors as columns, in occupation-basis coordinates.
    pub vectors: Op8,
    pub parity: [Parity; 8],
}

impl Spectrum {
    /// Builds a spectrum from unsorted levels and applies the ordering rule.
    fn from_levels(mut levels: Vec<(f64, SVector<Complex64, 8>, Parity, usize)>) -> Self {
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Reorder runs of near-equal energies by (parity, index).
        let mut start = 0;
        while start < levels.len() {
            let mut end = start + 1;
            while end < levels.len() {
                let scale = levels[end].0.abs().max(1.0);
                if levels[end].0 - levels[end - 1].0 > TIE_TOLERANCE * scale {
                    break;
                }
                end += 1;
            }
            levels[start..end].sort_by(|a, b| match a.2.cmp(&b.2) {
                Ordering::Equal => a.3.cmp(&b.3),
                other => other,
            });
            start = end;
        }
        let mut energies = [0.0; 8];
        let mut parity = [Parity::Even; 8];
        let mut vectors = Op8::zeros();
        for (k, (e, v, par, _)) in levels.into_iter().enumerate() {
            energies[k] = e;
            parity[k] = par;
            vectors.set_column(k, &v);
        }
        Self {
            energies,
            vectors,
            parity,
        }
    }

    pub fn vector(&self, j: usize) -> SVector<Complex64, 8> {
        self.vectors.column(j).into_owned()
    }

    /// `H = Σ_j E_j |E_j⟩⟨E_j|`.
    pub fn reconstruct(&self) -> Op8 {
        let d = Op8::from_diagonal(&SVector::from_fn(|i, _| c(self.energies[i])));
        self.vectors * d * self.vectors.adjoint()
    }

    /// `e^{-iHt}` built from the eigenpairs.
    pub fn propagator(&self, t: f64) -> Op8 {
        let d = Op8::from_diagonal(&SVector::from_fn(|i, _| {
            Complex64::from_polar(1.0, -self.energies[i] * t)
        }));
        self.vectors * d * self.vectors.adjoint()
    }

    pub fn bandwidth(&self) -> f64 {
        self.energies[7] - self.energies[0]
    }
}

fn parity_of_vector(v: &SVector<Complex64, 8>) -> Parity {
    let even: f64 = (0..DIM)
        .filter(|&i| Parity::of_index(i) == Parity::Even)
        .map(|i| v[i].norm_sqr())
        .sum();
    if even >= 0.5 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Numeric eigendecomposition of a Hermitian operator.
///
/// When the operator commutes with the parity operator the even and odd
/// sectors are diagonalized separately so every eigenvector carries a sharp
/// parity, even across degeneracies.
pub fn diagonalize(h: &Op8) -> Result<Spectrum, ModelError> {
    let asym = hermiticity_error(h);
    let scale = h.norm().max(1.0);
    if asym > 1e-12 * scale {
        return Err(ModelError::NotHermitian(asym));
    }
    let mut cross = 0.0_f64;
    for i in 0..DIM {
        for j in 0..DIM {
            if Parity::of_index(i) != Parity::of_index(j) {
                cross = cross.max(h[(i, j)].norm());
            }
        }
    }
    let mut levels = Vec::with_capacity(DIM);
    if cross <= 1e-14 * scale {
        for (sector, par) in [(&PARITY_ORDER[..4], Parity::Even), (&PARITY_ORDER[4..], Parity::Odd)] {
            let block = nalgebra::SMatrix::<Complex64, 4, 4>::from_fn(|i, j| h[(sector[i], sector[j])]);
            let (e, v) = jacobi_eigh(&block);
            for k in 0..4 {
                let mut full = SVector::<Complex64, 8>::zeros();
                for i in 0..4 {
                    full[sector[i]] = v[(i, k)];
                }
                let idx = levels.len();
                levels.push((e[k], full, par, idx));
            }
        }
    } else {
        let (e, v) = jacobi_eigh(h);
        for k in 0..DIM {
            let col = v.column(k).into_owned();
            let par = parity_of_vector(&col);
            levels.push((e[k], col, par, k));
        }
    }
    Ok(Spectrum::from_levels(levels))
}

/// Closed-form eigenpairs for equal orbital energies, in tabulated order
/// (labels 1..8 map to positions 0..7). Vectors carry the tabulated phases.
pub fn tabulated_levels(p: &ModelParams) -> Result<Vec<(f64, SVector<Complex64, 8>)>, ModelError> {
    p.validate()?;
    if p.eps1 != p.eps2 {
        return Err(ModelError::UnequalLevels(p.eps1, p.eps2));
    }
    let eps = p.eps1;
    let (l1, l2) = (p.lambda1, p.lambda2);
    let lam2 = l1 * l1 + l2 * l2;
    let xi_p = 0.5 * (p.eps_d + eps);
    let xi_m = 0.5 * (p.eps_d - eps);
    let delta_p = (xi_p * xi_p + lam2).sqrt();
    let delta_m = (xi_m * xi_m + lam2).sqrt();
    // b_{μν}^{-1} = sqrt(2Δ_μ(Δ_μ + ν ξ_μ)), c_{μν} = (ξ_μ + ν Δ_μ) b_{μν}
    let bc = |xi: f64, delta: f64, nu: f64, name: &'static str| {
        let denom = 2.0 * delta * (delta + nu * xi);
        if denom <= 0.0 || !denom.is_finite() {
            return Err(ModelError::DegenerateNormalization(name));
        }
        let b = 1.0 / denom.sqrt();
        Ok((b, (xi + nu * delta) * b))
    };

    let ket = |n1: u8, n2: u8, nd: u8| OccupationState::new(n1, n2, nd).index();
    let vac = ket(0, 0, 0);
    let f1 = ket(1, 0, 0);
    let f2 = ket(0, 1, 0);
    let d = ket(0, 0, 1);
    let f1d = ket(1, 0, 1);
    let f2d = ket(0, 1, 1);
    let f1f2 = ket(1, 1, 0);
    let f1f2d = ket(1, 1, 1);
    let vec_of = |terms: &[(usize, f64)]| {
        let mut v = SVector::<Complex64, 8>::zeros();
        for &(i, a) in terms {
            v[i] += c(a);
        }
        v
    };

    match p.species {
        Species::Majorana => {
            let (b_pp, c_pp) = bc(xi_p, delta_p, 1.0, "b++")?;
            let (b_mm, c_mm) = bc(xi_m, delta_m, -1.0, "b--")?;
            let (b_pm, c_pm) = bc(xi_p, delta_p, -1.0, "b+-")?;
            let (b_mp, c_mp) = bc(xi_m, delta_m, 1.0, "b-+")?;
            Ok(vec![
                (
                    xi_m - delta_p,
                    vec_of(&[(f2d, b_pp * l2), (f1d, b_pp * l1), (vac, c_pp)]),
                ),
                (
                    xi_m - delta_m,
                    vec_of(&[(f1, b_mm * l1), (f2, b_mm * l2), (d, c_mm)]),
                ),
                (
                    xi_p - delta_p,
                    vec_of(&[(f2, b_pm * l1), (f1, -b_pm * l2), (f1f2d, c_pm)]),
                ),
                (
                    xi_p - delta_m,
                    vec_of(&[(f2d, b_mp * l1), (f1d, -b_mp * l2), (f1f2, c_mp)]),
                ),
                (
                    xi_m + delta_m,
                    vec_of(&[(f2, b_mp * l2), (f1, b_mp * l1), (d, c_mp)]),
                ),
                (
                    xi_m + delta_p,
                    vec_of(&[(f1d, b_pm * l1), (f2d, b_pm * l2), (vac, c_pm)]),
                ),
                (
                    xi_p + delta_m,
                    vec_of(&[(f1d, b_mm * l2), (f2d, -b_mm * l1), (f1f2, -c_mm)]),
                ),
                (
                    xi_p + delta_p,
                    vec_of(&[(f2, b_pp * l1), (f1, -b_pp * l2), (f1f2d, c_pp)]),
                ),
            ])
        }
        Species::Regular => {
            if lam2 <= 0.0 {
                return Err(ModelError::DegenerateNormalization("lambda1^2 + lambda2^2"));
            }
            let n = 1.0 / lam2.sqrt();
            let (b_mm, c_mm) = bc(xi_m, delta_m, -1.0, "b--")?;
            let (b_mp, c_mp) = bc(xi_m, delta_m, 1.0, "b-+")?;
            Ok(vec![
                (-eps, vec_of(&[(vac, 1.0)])),
                (0.0, vec_of(&[(f2, n * l1), (f1, -n * l2)])),
                (p.eps_d, vec_of(&[(f1d, n * l1), (f2d, n * l2)])),
                (p.eps_d + eps, vec_of(&[(f1f2d, 1.0)])),
                (
                    xi_m - delta_m,
                    vec_of(&[(f1, b_mm * l1), (f2, b_mm * l2), (d, c_mm)]),
                ),
                (
                    xi_p - delta_m,
                    vec_of(&[(f2d, b_mp * l1), (f1d, -b_mp * l2), (f1f2, c_mp)]),
                ),
                (
                    xi_m + delta_m,
                    vec_of(&[(f1, b_mp * l1), (f2, b_mp * l2), (d, c_mp)]),
                ),
                (
                    xi_p + delta_m,
                    vec_of(&[(f1d, b_mm * l2), (f2d, -b_mm * l1), (f1f2, -c_mm)]),
                ),
            ])
        }
        Species::Custom => Err(ModelError::CustomSpecies),
    }
}

/// Closed-form spectrum, sorted with the same rule as [`diagonalize`].
pub fn analytic_spectrum(p: &ModelParams) -> Result<Spectrum, ModelError> {
    let levels = tabulated_levels(p)?
        .into_iter()
        .enumerate()
        .map(|(k, (e, v))| {
            let par = parity_of_vector(&v);
            (e, v, par, k)
        })
        .collect();
    Ok(Spectrum::from_levels(levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anticommutator, commutator, max_abs, ZERO};

    const PARAMS: (f64, f64, f64, f64) = (0.5, 0.5, 0.1, 0.2);

    fn majorana() -> ModelParams {
        let (ed, e, l1, l2) = PARAMS;
        ModelParams::majorana(ed, e, e, l1, l2)
    }

    fn regular() -> ModelParams {
        let (ed, e, l1, l2) = PARAMS;
        ModelParams::regular(ed, e, e, l1, l2)
    }

    #[test]
    fn index_round_trips() {
        for i in 0..DIM {
            let s = OccupationState::from_index(i);
            assert_eq!(s.index(), i);
            assert_eq!(OccupationState::new(s.n1, s.n2, s.nd), s);
        }
    }

    #[test]
    fn d_dagger_on_vacuum() {
        let d_dag = ladder_operator(Mode::Dot, true);
        assert_eq!(d_dag[(OccupationState::new(0, 0, 1).index(), 0)], ONE);
    }

    #[test]
    fn d_dagger_sign_follows_string() {
        let d_dag = ladder_operator(Mode::Dot, true);
        let bra = OccupationState::new(1, 0, 1).index();
        let ket = OccupationState::new(1, 0, 0).index();
        assert_eq!(d_dag[(bra, ket)], -ONE);
        // (-1)^(k1+k2) in general
        for k1 in 0..2u8 {
            for k2 in 0..2u8 {
                let v = d_dag[(
                    OccupationState::new(k1, k2, 1).index(),
                    OccupationState::new(k1, k2, 0).index(),
                )];
                assert_eq!(v.re, if (k1 + k2) % 2 == 0 { 1.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn ladder_operators_are_nilpotent() {
        for mode in Mode::ALL {
            for dagger in [false, true] {
                let a = ladder_operator(mode, dagger);
                assert_eq!(a * a, Op8::zeros());
            }
        }
    }

    #[test]
    fn canonical_anticommutation() {
        for a in Mode::ALL {
            for b in Mode::ALL {
                let ca = ladder_operator(a, false);
                let cb = ladder_operator(b, false);
                let cb_dag = ladder_operator(b, true);
                let expected = if a == b { Op8::identity() } else { Op8::zeros() };
                assert_eq!(anticommutator(&ca, &cb_dag), expected);
                assert_eq!(anticommutator(&ca, &cb), Op8::zeros());
            }
        }
    }

    #[test]
    fn hamiltonian_block_entries() {
        let h = hamiltonian(&majorana());
        let vac = 0;
        let f1d = OccupationState::new(1, 0, 1).index();
        assert!((h[(vac, f1d)].re + 0.1).abs() < 1e-15);
        assert!(hermiticity_error(&h) < 1e-14);
    }

    #[test]
    fn hamiltonian_matches_parity_blocks() {
        let p = ModelParams::custom(0.3, 0.7, -0.2, 0.11, -0.23, 0.05, 0.31);
        let h = to_parity_order(&hamiltonian(&p));
        let ep = 0.5 * (p.eps1 + p.eps2);
        let em = 0.5 * (p.eps1 - p.eps2);
        let (l1, l2, t1, t2, ed) = (p.lambda1, p.lambda2, p.lambda_t1, p.lambda_t2, p.eps_d);
        let h0 = [
            [-ep, -t1, -t2, 0.0],
            [-t1, ed + em, 0.0, l2],
            [-t2, 0.0, ed - em, -l1],
            [0.0, l2, -l1, ep],
        ];
        let h1 = [
            [ed - ep, l1, l2, 0.0],
            [l1, em, 0.0, -t2],
            [l2, 0.0, -em, t1],
            [0.0, -t2, t1, ed + ep],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!((h[(i, j)] - c(h0[i][j])).norm() < 1e-15, "H0[{i}][{j}]");
                assert!((h[(i + 4, j + 4)] - c(h1[i][j])).norm() < 1e-15, "H1[{i}][{j}]");
                assert_eq!(h[(i, j + 4)], ZERO);
            }
        }
    }

    #[test]
    fn regular_conserves_particle_number() {
        let n = total_number_operator();
        assert_eq!(max_abs(&commutator(&hamiltonian(&regular()), &n)), 0.0);
        assert!(max_abs(&commutator(&hamiltonian(&majorana()), &n)) > 0.05);
    }

    #[test]
    fn decoupled_vacuum_energy() {
        let p = ModelParams::custom(0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0);
        assert!((hamiltonian(&p)[(0, 0)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn majorana_ground_energy() {
        let s = analytic_spectrum(&majorana()).unwrap();
        assert!((s.energies[0] + 0.3_f64.sqrt()).abs() < 1e-12);
        assert!((s.energies[0] + 0.5477226).abs() < 1e-7);
    }

    #[test]
    fn regular_vacuum_level() {
        let levels = tabulated_levels(&regular()).unwrap();
        assert_eq!(levels[0].0, -0.5);
    }

    #[test]
    fn majorana_zero_splitting_collapses_to_two_levels() {
        let p = ModelParams::majorana(0.5, 0.0, 0.0, 0.1, 0.2);
        let s = analytic_spectrum(&p).unwrap();
        let gap = (0.0625_f64 + 0.05).sqrt();
        for k in 0..4 {
            assert!((s.energies[k] - (0.25 - gap)).abs() < 1e-12);
            assert!((s.energies[k + 4] - (0.25 + gap)).abs() < 1e-12);
        }
        assert!((gap - 0.3354102).abs() < 1e-7);
    }

    #[test]
    fn tabulated_vectors_are_eigenvectors() {
        for p in [majorana(), regular(), ModelParams::majorana(0.3, 0.8, 0.8, 0.25, -0.1)] {
            let h = hamiltonian(&p);
            for (e, v) in tabulated_levels(&p).unwrap() {
                assert!((v.norm() - 1.0).abs() < 1e-12);
                assert!((h * v - v * c(e)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn analytic_rejects_invalid_inputs() {
        let p = ModelParams::majorana(0.5, 0.4, 0.5, 0.1, 0.2);
        assert_eq!(analytic_spectrum(&p), Err(ModelError::UnequalLevels(0.4, 0.5)));
        let p = ModelParams::regular(0.5, 0.5, 0.5, 0.0, 0.0);
        assert!(matches!(
            analytic_spectrum(&p),
            Err(ModelError::DegenerateNormalization(_))
        ));
        // ξ_- < 0 with no coupling: Δ_- + ξ_- vanishes.
        let p = ModelParams::majorana(0.2, 0.6, 0.6, 0.0, 0.0);
        assert!(matches!(
            analytic_spectrum(&p),
            Err(ModelError::DegenerateNormalization(_))
        ));
        let p = ModelParams::custom(0.5, 0.5, 0.5, 0.1, 0.1, 0.0, 0.1);
        assert_eq!(analytic_spectrum(&p), Err(ModelError::CustomSpecies));
    }

    #[test]
    fn numeric_spectrum_matches_closed_form() {
        for p in [majorana(), regular()] {
            let a = analytic_spectrum(&p).unwrap();
            let n = diagonalize(&hamiltonian(&p)).unwrap();
            for k in 0..DIM {
                assert!((a.energies[k] - n.energies[k]).abs() < 1e-10);
            }
            assert_eq!(a.parity, n.parity);
        }
    }

    #[test]
    fn diagonal_operator_spectrum() {
        let diag = [0.3, -1.0, 2.0, 0.5, 0.0, -0.2, 1.5, 0.9];
        let h = Op8::from_diagonal(&SVector::from_fn(|i, _| c(diag[i])));
        let s = diagonalize(&h).unwrap();
        let mut sorted = diag;
        sorted.sort_by(f64::total_cmp);
        assert_eq!(s.energies, sorted);
        for k in 0..DIM {
            let col = s.vector(k);
            let hot = (0..DIM).filter(|&i| col[i].norm() > 0.0).collect::<Vec<_>>();
            assert_eq!(hot.len(), 1);
            assert_eq!(col[hot[0]].norm(), 1.0);
            assert_eq!(diag[hot[0]], s.energies[k]);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut h = hamiltonian(&majorana());
        h[(0, 5)] += c(1e-6);
        match diagonalize(&h) {
            Err(ModelError::NotHermitian(a)) => assert!((a - 1e-6).abs() < 1e-12),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_majorana_vectors_keep_parity() {
        let p = ModelParams::majorana(0.5, 0.0, 0.0, 0.1, 0.2);
        let s = diagonalize(&hamiltonian(&p)).unwrap();
        for k in 0..DIM {
            let v = s.vector(k);
            for i in 0..DIM {
                if Parity::of_index(i) != s.parity[k] {
                    assert_eq!(v[i], ZERO);
                }
            }
        }
        // Ties resolved even-first.
        assert_eq!(&s.parity[..4], &[Parity::Even, Parity::Even, Parity::Odd, Parity::Odd]);
    }
}
