// Copyright 2026 The majodot Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use majodot::bath::{correlation_pair, dissipation_scale_estimate};
use majodot::experiments::{figure_preset, run_scenario, RunError, Scenario};
use majodot::fock::{diagonalize, hamiltonian};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

#[derive(Parser)]
#[command(name = "majodot", version, about = "Open-system dynamics of a quantum dot coupled to Majorana or regular fermion pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a scenario and write one CSV per run plus a manifest.
    Simulate {
        #[arg(long, conflicts_with = "figure", required_unless_present = "figure")]
        config: Option<PathBuf>,
        /// Figure preset, fig3 to fig14.
        #[arg(long)]
        figure: Option<String>,
        /// Output directory [default: output/<run name>].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the eight energies and parity labels for each species.
    Spectrum {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print samples of the bath correlation functions.
    Kernel {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn simulate(config: Option<&Path>, figure: Option<&str>, out: Option<PathBuf>) -> Result<(), Failure> {
    let scenario = match (config, figure) {
        (Some(path), _) => Scenario::from_path(path)?,
        (None, Some(id)) => figure_preset(id)?,
        (None, None) => return Err(Failure::Usage("either --config or --figure is required".into())),
    };
    let out = out.unwrap_or_else(|| PathBuf::from("output").join(&scenario.run.name));
    let report = run_scenario(&scenario, &out)?;
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    println!("wrote {}", report.manifest.display());
    if report.failures.is_empty() {
        return Ok(());
    }
    let mut msg = String::new();
    for (stem, e) in &report.failures {
        msg.push_str(&format!("{stem}: {e}\n"));
    }
    if report.failures.iter().all(|(_, e)| e.is_numerical()) {
        Err(Failure::Numerical(msg.trim_end().to_string()))
    } else {
        Err(Failure::Usage(msg.trim_end().to_string()))
    }
}

fn spectrum(config: &Path) -> Result<(), Failure> {
    let scenario = Scenario::from_path(config)?;
    for p in scenario.models()? {
        let s = diagonalize(&hamiltonian(&p)).map_err(|e| Failure::Usage(e.to_string()))?;
        println!("# {}", p.species);
        println!("level,energy,parity");
        for (j, (e, par)) in s.energies.iter().zip(s.parity.iter()).enumerate() {
            println!("{},{:.11e},{}", j + 1, e, par);
        }
    }
    Ok(())
}

fn kernel(config: &Path, t_max: f64, samples: usize) -> Result<(), Failure> {
    if !(t_max > 0.0) || !t_max.is_finite() || samples == 0 {
        return Err(Failure::Usage("--t-max must be > 0 and --samples ≥ 1".into()));
    }
    let scenario = Scenario::from_path(config)?;
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    for b in scenario.baths()? {
        let scale = dissipation_scale_estimate(&b).map_err(|e| Failure::Numerical(e.to_string()))?;
        let io = |e: std::io::Error| Failure::Usage(e.to_string());
        writeln!(w, "# omega_c = {}, {}, dissipation scale estimate = {:.6e}", b.omega_c, b.temperature, scale)
            .map_err(io)?;
        writeln!(w, "t,re_alpha_plus,im_alpha_plus,re_alpha_minus,im_alpha_minus").map_err(io)?;
        for k in 0..=samples {
            let t = t_max * k as f64 / samples as f64;
            let (p, m) = correlation_pair(t, &b).map_err(|e| Failure::Numerical(e.to_string()))?;
            writeln!(w, "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}", t, p.re, p.im, m.re, m.im).map_err(io)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Simulate { config, figure, out } => simulate(config.as_deref(), figure.as_deref(), out),
        Command::Spectrum { config } => spectrum(&config),
        Command::Kernel { config, t_max, samples } => kernel(&config, t_max, samples),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical abort: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
