// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario configuration, presets and batch execution.

pub mod config;
pub mod presets;
pub mod runner;

use std::path::PathBuf;

use thiserror::Error;

use crate::propagator::PropagationError;
use crate::resources::ResourceError;

pub use config::{InitialState, OutputGroup, Outputs, Scenario, ScenarioConfig};
pub use presets::{figure_preset, preset_initial_state, FIGURE_IDS, PRESET_NAMES};
pub use runner::{execute, run_scenario, to_csv, Manifest, OutputRow, RunOutput, ScenarioReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Propagation(#[from] PropagationError),
    #[error("resource evaluation failed at t = {t}: {source}")]
    Resource {
        t: f64,
        #[source]
        source: ResourceError,
    },
}

impl RunError {
    /// True for aborts caused by the numerics rather than by the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            RunError::Propagation(e) => matches!(
                e,
                PropagationError::Breach { .. } | PropagationError::Bath(_) | PropagationError::MemoryDesync { .. }
            ),
            RunError::Resource { .. } => true,
            RunError::Config(_) | RunError::Io { .. } => false,
        }
    }
}
