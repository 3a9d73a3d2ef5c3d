// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Executes scenarios and writes one CSV per run plus a manifest.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{BathSection, ModelSection, RunSection, Scenario, ScenarioConfig};
use super::RunError;
use crate::propagator::{evolve, Trajectory, BREACH_TOLERANCE, MAX_STEP_PRODUCT, POSITIVITY_FLOOR};
use crate::resources::{occupations, pair_resources};

pub const MANIFEST_FILE: &str = "manifest.toml";

/// One sampled row. Column order is the field order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputRow {
    pub t: f64,
    pub n1: f64,
    pub n2: f64,
    pub nd: f64,
    pub conc_12: f64,
    pub conc_1d: f64,
    pub conc_2d: f64,
    pub l1_12: f64,
    pub l1_1d: f64,
    pub l1_2d: f64,
    pub trace_err: f64,
    pub herm_err: f64,
    pub min_eig: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub config: ScenarioConfig,
    pub trajectory: Trajectory,
    pub rows: Vec<OutputRow>,
}

/// Evolves one run and tabulates every sample. Resources are only computed
/// when their column group is requested.
pub fn execute(cfg: &ScenarioConfig) -> Result<RunOutput, RunError> {
    let trajectory = evolve(&cfg.rho0, &cfg.model, &cfg.bath, &cfg.settings)?;
    let want_resources = cfg.outputs.concurrence || cfg.outputs.l1;
    let mut rows = Vec::with_capacity(trajectory.states.len());
    for (rho, diag) in trajectory.states.iter().zip(&trajectory.diagnostics) {
        let (n1, n2, nd) = occupations(rho);
        let (conc, l1) = if want_resources {
            pair_resources(rho).map_err(|source| RunError::Resource { t: rho.t, source })?
        } else {
            ([0.0; 3], [0.0; 3])
        };
        rows.push(OutputRow {
            t: rho.t,
            n1,
            n2,
            nd,
            conc_12: conc[0],
            conc_1d: conc[1],
            conc_2d: conc[2],
            l1_12: l1[0],
            l1_1d: l1[1],
            l1_2d: l1[2],
            trace_err: diag.trace_err,
            herm_err: diag.herm_err,
            min_eig: diag.min_eig,
        });
    }
    Ok(RunOutput {
        config: cfg.clone(),
        trajectory,
        rows,
    })
}

fn columns(out: &RunOutput) -> Vec<(&'static str, fn(&OutputRow) -> f64)> {
    let o = out.config.outputs;
    let mut cols: Vec<(&'static str, fn(&OutputRow) -> f64)> = vec![("t", |r| r.t)];
    if o.occupations {
        cols.extend([
            ("n1", (|r: &OutputRow| r.n1) as fn(&OutputRow) -> f64),
            ("n2", |r| r.n2),
            ("nd", |r| r.nd),
        ]);
    }
    if o.concurrence {
        cols.extend([
            ("conc_12", (|r: &OutputRow| r.conc_12) as fn(&OutputRow) -> f64),
            ("conc_1d", |r| r.conc_1d),
            ("conc_2d", |r| r.conc_2d),
        ]);
    }
    if o.l1 {
        cols.extend([
            ("l1_12", (|r: &OutputRow| r.l1_12) as fn(&OutputRow) -> f64),
            ("l1_1d", |r| r.l1_1d),
            ("l1_2d", |r| r.l1_2d),
        ]);
    }
    if o.diagnostics {
        cols.extend([
            ("trace_err", (|r: &OutputRow| r.trace_err) as fn(&OutputRow) -> f64),
            ("herm_err", |r| r.herm_err),
            ("min_eig", |r| r.min_eig),
        ]);
    }
    cols
}

/// CSV text: one header line, then one row per sample with 12 significant
/// digits.
pub fn to_csv(out: &RunOutput) -> Vec<u8> {
    let cols = columns(out);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(cols.iter().map(|c| c.0)).expect("in-memory write");
    for row in &out.rows {
        w.write_record(cols.iter().map(|c| format!("{:.11e}", c.1(row))))
            .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub breach: f64,
    pub positivity_floor: f64,
    pub max_step_product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub file: String,
    pub species: String,
    pub beta: f64,
    pub omega_c: f64,
    pub step: f64,
    pub sample_every: usize,
    /// `ok` or the abort message.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestInfo {
    pub version: String,
    pub tolerances: Tolerances,
    pub files: Vec<FileEntry>,
}

/// The scenario as given plus a `[manifest]` section describing the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub model: ModelSection,
    pub bath: BathSection,
    pub run: RunSection,
    pub manifest: ManifestInfo,
}

impl Manifest {
    pub fn scenario(&self) -> Scenario {
        Scenario {
            model: self.model.clone(),
            bath: self.bath.clone(),
            run: self.run.clone(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes to TOML")
    }
}

#[derive(Debug)]
pub struct ScenarioReport {
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
    /// Runs that aborted, by file stem.
    pub failures: Vec<(String, RunError)>,
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), RunError> {
    fs::write(path, bytes).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs every combination of the scenario in parallel and writes
/// `<stem>.csv` for each successful run and `manifest.toml` into `out_dir`.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path) -> Result<ScenarioReport, RunError> {
    let configs = scenario.expand()?;
    fs::create_dir_all(out_dir).map_err(|source| RunError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let results: Vec<Result<RunOutput, RunError>> = configs.par_iter().map(execute).collect();

    let mut files = Vec::new();
    let mut failures = Vec::new();
    let mut entries = Vec::new();
    for (cfg, result) in configs.iter().zip(results) {
        let name = format!("{}.csv", cfg.stem());
        let status = match result {
            Ok(out) => {
                let path = out_dir.join(&name);
                write(&path, &to_csv(&out))?;
                files.push(path);
                "ok".to_string()
            }
            Err(e) => {
                let msg = e.to_string();
                failures.push((cfg.stem(), e));
                msg
            }
        };
        entries.push(FileEntry {
            file: name,
            species: cfg.model.species.to_string(),
            beta: cfg.bath.temperature.beta(),
            omega_c: cfg.bath.omega_c,
            step: cfg.settings.step,
            sample_every: cfg.settings.sample_every,
            status,
        });
    }
    let manifest = Manifest {
        model: scenario.model.clone(),
        bath: scenario.bath.clone(),
        run: scenario.run.clone(),
        manifest: ManifestInfo {
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances: Tolerances {
                breach: BREACH_TOLERANCE,
                positivity_floor: POSITIVITY_FLOOR,
                max_step_product: MAX_STEP_PRODUCT,
            },
            files: entries,
        },
    };
    let manifest_path = out_dir.join(MANIFEST_FILE);
    write(&manifest_path, manifest.to_toml().as_bytes())?;
    Ok(ScenarioReport {
        files,
        manifest: manifest_path,
        failures,
    })
}
