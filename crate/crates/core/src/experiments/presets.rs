// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

//! Named initial states and the per-figure scenario presets.

use nalgebra::SVector;
use num_complex::Complex64;

use super::config::{
    BathSection, InitialState, ModelSection, OneOrMany, OutputGroup, RunSection, Scenario, DEFAULT_HORIZON,
};
use super::RunError;
use crate::fock::{OccupationState, Species};
use crate::propagator::DensityMatrix;

pub const PRESET_NAMES: [&str; 5] = ["one", "plus", "w", "phi", "vacuum"];

pub const FIGURE_IDS: [&str; 12] = [
    "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13", "fig14",
];

fn ket(amplitudes: &[(OccupationState, f64)]) -> SVector<Complex64, 8> {
    let mut v = SVector::<Complex64, 8>::zeros();
    for (s, a) in amplitudes {
        v[s.index()] += Complex64::new(*a, 0.0);
    }
    v
}

/// Pure-state projector for a named preset:
///
/// - `one`: `d†|0⟩`
/// - `plus`: `(f1† + f2†)|0⟩ / √2`
/// - `w`: `(d† + f1† + f2†)|0⟩ / √3`
/// - `phi`: `(1 + f1† f2†)|0⟩ / √2`
/// - `vacuum`: `|0⟩`
pub fn preset_initial_state(name: &str) -> Result<DensityMatrix, RunError> {
    let st = OccupationState::new;
    let h = 0.5_f64.sqrt();
    let t = (1.0_f64 / 3.0).sqrt();
    let psi = match name {
        "one" => ket(&[(st(0, 0, 1), 1.0)]),
        "plus" => ket(&[(st(1, 0, 0), h), (st(0, 1, 0), h)]),
        "w" => ket(&[(st(0, 0, 1), t), (st(1, 0, 0), t), (st(0, 1, 0), t)]),
        // f1† f2† |0⟩ is the canonical ket |1,1,0⟩ with sign +1
        "phi" => ket(&[(st(0, 0, 0), h), (st(1, 1, 0), h)]),
        "vacuum" => ket(&[(st(0, 0, 0), 1.0)]),
        other => {
            return Err(RunError::Config(format!(
                "unknown initial state {other:?}; valid presets: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    DensityMatrix::pure(&psi).map_err(|e| RunError::Config(e.to_string()))
}

struct Figure {
    state: &'static str,
    species: Vec<Species>,
    eps: f64,
    omega_c: Vec<f64>,
    beta: Vec<f64>,
    outputs: Vec<OutputGroup>,
}

/// Scenario reproducing every panel of one figure.
///
/// All figures share γ = 0.05, s = 1, ε_d = 0.5, λ1 = 0.1, λ2 = 0.2 and
/// ε = 0.5, except figures 13 and 14 which use ε = 0.0005.
pub fn figure_preset(id: &str) -> Result<Scenario, RunError> {
    use OutputGroup::*;
    let both = vec![Species::Majorana, Species::Regular];
    let occupations = vec![Occupations, Diagnostics];
    let resources = vec![Concurrence, L1, Diagnostics];
    let inf = f64::INFINITY;
    let paired = |state, wc: f64| Figure {
        state,
        species: both.clone(),
        eps: 0.5,
        omega_c: vec![wc],
        beta: vec![inf, 1.0],
        outputs: resources.clone(),
    };
    let fig = match id {
        "fig3" | "fig4" => Figure {
            state: "one",
            species: both.clone(),
            eps: 0.5,
            omega_c: vec![10.0, 50.0],
            beta: vec![if id == "fig3" { inf } else { 1.0 }],
            outputs: occupations.clone(),
        },
        "fig5" => paired("one", 10.0),
        "fig6" => paired("one", 50.0),
        "fig7" => paired("plus", 10.0),
        "fig8" => paired("plus", 50.0),
        "fig9" => paired("w", 10.0),
        "fig10" => paired("w", 50.0),
        "fig11" => paired("phi", 10.0),
        "fig12" => paired("phi", 50.0),
        "fig13" | "fig14" => Figure {
            state: "one",
            species: vec![Species::Majorana],
            eps: 0.0005,
            omega_c: vec![10.0, 50.0],
            beta: vec![inf, 1.0],
            outputs: if id == "fig13" { occupations.clone() } else { resources.clone() },
        },
        other => {
            return Err(RunError::Config(format!(
                "unknown figure {other:?}; valid figures: {}",
                FIGURE_IDS.join(", ")
            )))
        }
    };
    let many = |v: Vec<f64>| if v.len() == 1 { OneOrMany::One(v[0]) } else { OneOrMany::Many(v) };
    Ok(Scenario {
        model: ModelSection {
            species: if fig.species.len() == 1 {
                OneOrMany::One(fig.species[0])
            } else {
                OneOrMany::Many(fig.species)
            },
            eps_d: 0.5,
            eps1: fig.eps,
            eps2: fig.eps,
            lambda1: 0.1,
            lambda2: 0.2,
            lambda_t1: None,
            lambda_t2: None,
        },
        bath: BathSection {
            gamma: 0.05,
            s: 1.0,
            omega_c: many(fig.omega_c),
            beta: many(fig.beta),
        },
        run: RunSection {
            name: id.to_string(),
            initial_state: InitialState::Preset(fig.state.to_string()),
            horizon: DEFAULT_HORIZON,
            step: None,
            sample_every: None,
            outputs: fig.outputs,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::Temperature;
    use crate::resources::occupations;

    #[test]
    fn one_is_dot_state() {
        let rho = preset_initial_state("one").unwrap();
        assert_eq!(rho.coefficients[(4, 4)].re, 1.0);
        assert_eq!(rho.coefficients.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn phi_support() {
        let rho = preset_initial_state("phi").unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if [0, 3].contains(&i) && [0, 3].contains(&j) { 0.5 } else { 0.0 };
                assert!((rho.coefficients[(i, j)].re - expect).abs() < 1e-15);
            }
        }
        let (n1, n2, nd) = occupations(&rho);
        assert!((n1 - 0.5).abs() < 1e-15 && (n2 - 0.5).abs() < 1e-15 && nd == 0.0);
    }

    #[test]
    fn w_occupations() {
        let (n1, n2, nd) = occupations(&preset_initial_state("w").unwrap());
        for n in [n1, n2, nd] {
            assert!((n - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_preset_lists_names() {
        let err = preset_initial_state("psi").unwrap_err().to_string();
        for name in PRESET_NAMES {
            assert!(err.contains(name));
        }
    }

    #[test]
    fn figure_runs() {
        let fig3 = figure_preset("fig3").unwrap().expand().unwrap();
        assert_eq!(fig3.len(), 4);
        assert!(fig3.iter().all(|c| c.bath.temperature == Temperature::Zero && c.outputs.occupations));
        let fig5 = figure_preset("fig5").unwrap().expand().unwrap();
        assert_eq!(fig5.len(), 4);
        assert!(fig5.iter().all(|c| c.bath.omega_c == 10.0 && c.model.lambda1 == 0.1 && c.model.lambda2 == 0.2));
        assert!(fig5.iter().all(|c| c.outputs.concurrence && c.outputs.l1));
        let fig13 = figure_preset("fig13").unwrap().expand().unwrap();
        assert_eq!(fig13.len(), 4);
        assert!(fig13.iter().all(|c| c.model.species == Species::Majorana && c.model.eps1 == 0.0005));
        for id in FIGURE_IDS {
            assert!(figure_preset(id).unwrap().expand().is_ok());
        }
        assert!(figure_preset("fig2").is_err());
    }
}
