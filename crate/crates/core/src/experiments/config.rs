// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario files: a TOML document with `[model]`, `[bath]` and `[run]`
//! sections. `species`, `omega_c` and `beta` take either one value or a
//! list; the scenario expands to one run per combination.
//!
//! ```toml
//! [model]
//! species = ["majorana", "regular"]
//! eps_d = 0.5
//! eps1 = 0.5
//! eps2 = 0.5
//! lambda1 = 0.1
//! lambda2 = 0.2
//!
//! [bath]
//! gamma = 0.05
//! s = 1.0
//! omega_c = [10.0, 50.0]
//! beta = inf
//!
//! [run]
//! name = "decay"
//! initial_state = "one"
//! horizon = 60.0
//! outputs = ["occupations", "diagnostics"]
//! ```

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::presets::preset_initial_state;
use super::RunError;
use crate::bath::{BathParams, Temperature};
use crate::fock::{diagonalize, hamiltonian, ModelParams, Species};
use crate::linalg::Op8;
use crate::propagator::{DensityMatrix, RunSettings};

pub const DEFAULT_HORIZON: f64 = 60.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub species: OneOrMany<Species>,
    pub eps_d: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Only read for `species = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_t1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_t2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    pub gamma: f64,
    pub s: f64,
    pub omega_c: OneOrMany<f64>,
    /// Inverse temperature; `inf` is zero temperature.
    pub beta: OneOrMany<f64>,
}

/// Initial state: a preset name or an explicit 8×8 matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialState {
    Preset(String),
    Matrix {
        re: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        im: Option<Vec<Vec<f64>>>,
    },
}

impl InitialState {
    pub fn resolve(&self) -> Result<DensityMatrix, RunError> {
        match self {
            InitialState::Preset(name) => preset_initial_state(name),
            InitialState::Matrix { re, im } => {
                let shape_ok = |m: &Vec<Vec<f64>>| m.len() == 8 && m.iter().all(|r| r.len() == 8);
                if !shape_ok(re) || !im.as_ref().is_none_or(shape_ok) {
                    return Err(RunError::Config("initial_state matrix must be 8×8".into()));
                }
                let m = Op8::from_fn(|i, j| {
                    let imag = im.as_ref().map_or(0.0, |m| m[i][j]);
                    num_complex::Complex64::new(re[i][j], imag)
                });
                DensityMatrix::new(m, 0.0).map_err(|e| RunError::Config(format!("initial_state: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputGroup {
    Occupations,
    Concurrence,
    L1,
    Diagnostics,
}

fn all_outputs() -> Vec<OutputGroup> {
    vec![
        OutputGroup::Occupations,
        OutputGroup::Concurrence,
        OutputGroup::L1,
        OutputGroup::Diagnostics,
    ]
}

fn default_horizon() -> f64 {
    DEFAULT_HORIZON
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub name: String,
    pub initial_state: InitialState,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    /// Defaults to `min(0.01, 0.25 / max(bandwidth, ωc))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// Defaults to one sample per 0.05 time units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_every: Option<usize>,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<OutputGroup>,
}

/// A parsed scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub model: ModelSection,
    pub bath: BathSection,
    pub run: RunSection,
}

/// Which column groups a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub occupations: bool,
    pub concurrence: bool,
    pub l1: bool,
    pub diagnostics: bool,
}

impl Outputs {
    pub fn from_groups(groups: &[OutputGroup]) -> Self {
        Self {
            occupations: groups.contains(&OutputGroup::Occupations),
            concurrence: groups.contains(&OutputGroup::Concurrence),
            l1: groups.contains(&OutputGroup::L1),
            diagnostics: groups.contains(&OutputGroup::Diagnostics),
        }
    }
}

/// One fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub model: ModelParams,
    pub bath: BathParams,
    pub initial_state: InitialState,
    pub rho0: DensityMatrix,
    pub settings: RunSettings,
    pub outputs: Outputs,
}

impl ScenarioConfig {
    /// `<name>_<species>_<T0|betaX>_wc<ωc>`
    pub fn stem(&self) -> String {
        format!(
            "{}_{}_{}_wc{}",
            self.name, self.model.species, self.bath.temperature, self.bath.omega_c
        )
    }
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (h = {}, horizon = {})",
            self.stem(),
            self.settings.step,
            self.settings.horizon
        )
    }
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path).map_err(|source| RunError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes to TOML")
    }

    fn model_params(&self, species: Species) -> Result<ModelParams, RunError> {
        let m = &self.model;
        let p = match species {
            Species::Majorana => ModelParams::majorana(m.eps_d, m.eps1, m.eps2, m.lambda1, m.lambda2),
            Species::Regular => ModelParams::regular(m.eps_d, m.eps1, m.eps2, m.lambda1, m.lambda2),
            Species::Custom => {
                let (Some(t1), Some(t2)) = (m.lambda_t1, m.lambda_t2) else {
                    return Err(RunError::Config(
                        "species \"custom\" needs lambda_t1 and lambda_t2".into(),
                    ));
                };
                ModelParams::custom(m.eps_d, m.eps1, m.eps2, m.lambda1, m.lambda2, t1, t2)
            }
        };
        p.validate().map_err(|e| RunError::Config(e.to_string()))?;
        Ok(p)
    }

    /// All model variants named by the file.
    pub fn models(&self) -> Result<Vec<ModelParams>, RunError> {
        self.model.species.to_vec().into_iter().map(|s| self.model_params(s)).collect()
    }

    /// All bath variants named by the file, ωc-major.
    pub fn baths(&self) -> Result<Vec<BathParams>, RunError> {
        let mut out = Vec::new();
        for wc in self.bath.omega_c.to_vec() {
            for beta in self.bath.beta.to_vec() {
                let b = BathParams::new(self.bath.gamma, self.bath.s, wc, Temperature::from_beta(beta))
                    .map_err(|e| RunError::Config(e.to_string()))?;
                out.push(b);
            }
        }
        Ok(out)
    }

    /// One config per (species, ωc, β), in that nesting order.
    pub fn expand(&self) -> Result<Vec<ScenarioConfig>, RunError> {
        let r = &self.run;
        if r.name.is_empty() || r.name.contains(['/', '\\']) {
            return Err(RunError::Config(format!("invalid run name {:?}", r.name)));
        }
        if !(r.horizon > 0.0) || !r.horizon.is_finite() {
            return Err(RunError::Config(format!("horizon must be > 0, got {}", r.horizon)));
        }
        if let Some(h) = r.step {
            if !(h > 0.0) || !h.is_finite() {
                return Err(RunError::Config(format!("step must be > 0, got {h}")));
            }
        }
        if r.sample_every == Some(0) {
            return Err(RunError::Config("sample_every must be ≥ 1".into()));
        }
        let rho0 = r.initial_state.resolve()?;
        let baths = self.baths()?;
        let mut out = Vec::new();
        for model in self.models()? {
            let spectrum = diagonalize(&hamiltonian(&model)).map_err(|e| RunError::Config(e.to_string()))?;
            for bath in &baths {
                let mut settings = RunSettings::default_for(r.horizon, spectrum.bandwidth(), bath.omega_c);
                if let Some(h) = r.step {
                    settings.step = h;
                    settings.sample_every = ((0.05 / h).round() as usize).max(1);
                }
                if let Some(n) = r.sample_every {
                    settings.sample_every = n;
                }
                out.push(ScenarioConfig {
                    name: r.name.clone(),
                    model,
                    bath: *bath,
                    initial_state: r.initial_state.clone(),
                    rho0: rho0.clone(),
                    settings,
                    outputs: Outputs::from_groups(&r.outputs),
                });
            }
        }
        Ok(out)
    }
}
