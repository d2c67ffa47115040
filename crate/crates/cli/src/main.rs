//! `normaloid` command-line tool.
//!
//! Exit codes: 0 success (or the checked identity holds), 1 a verified
//! property failed or the solver failed, 2 invalid input.

mod config;
mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use normaloid_core::formats::{self, to_json};
use normaloid_core::{
    boundary_sweep, generate, generate_sequence, verify_main_theorem, EnsembleKind, EnsembleSpec,
    Error, OperatorAnalysis,
};

use config::{Cli, CliConfig, Command};

/// Lemma identity tolerance (absolute).
const LEMMA_TOL: f64 = 1e-12;

enum Failure {
    /// A checked identity did not hold; the payload has already been written.
    Property,
    Solver(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => Failure::Solver(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match CliConfig::resolve(cli.command, cli.flags) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(config: &CliConfig) -> Result<(), Failure> {
    match config.command {
        Command::Range => cmd_range(config),
        Command::Radius => cmd_radius(config),
        Command::Norm => cmd_norm(config),
        Command::Analyze => cmd_analyze(config),
        Command::VerifySequence => cmd_verify_sequence(config),
        Command::Lemma => cmd_lemma(config),
        Command::Gen => cmd_gen(config),
    }
}

fn read_input(config: &CliConfig) -> Result<String, Failure> {
    match &config.input_path {
        Some(path) if path != Path::new("-") => fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(config: &CliConfig, text: &str) -> Result<(), Failure> {
    match &config.output_path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn cmd_range(config: &CliConfig) -> Result<(), Failure> {
    let a = formats::parse_matrix(&read_input(config)?)?;
    let profile = boundary_sweep(&a, config.samples)?;
    if let Some(path) = &config.svg_path {
        fs::write(path, svg::render(&profile, a.spectral_norm()))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    write_output(config, &formats::boundary_csv(&profile))
}

#[derive(Serialize)]
struct RadiusJson {
    radius: f64,
    theta_star: f64,
    extremal_point: [f64; 2],
}

fn cmd_radius(config: &CliConfig) -> Result<(), Failure> {
    let a = formats::parse_matrix(&read_input(config)?)?;
    let p = boundary_sweep(&a, config.samples)?;
    write_output(
        config,
        &to_json(&RadiusJson {
            radius: p.radius,
            theta_star: p.theta_star,
            extremal_point: [p.extremal_point.re, p.extremal_point.im],
        }),
    )
}

#[derive(Serialize)]
struct NormJson {
    norm: f64,
}

fn cmd_norm(config: &CliConfig) -> Result<(), Failure> {
    let a = formats::parse_matrix(&read_input(config)?)?;
    write_output(config, &to_json(&NormJson { norm: a.spectral_norm() }))
}

fn cmd_analyze(config: &CliConfig) -> Result<(), Failure> {
    let a = formats::parse_matrix(&read_input(config)?)?;
    let report = OperatorAnalysis::with_samples(&a, config.samples)?.report(config.tol)?;
    write_output(config, &formats::report_to_json(&report))
}

fn cmd_verify_sequence(config: &CliConfig) -> Result<(), Failure> {
    let x = formats::parse_sequence(&read_input(config)?)?;
    let verdict = verify_main_theorem(&x, config.grid_angles, config.grid_radii)?;
    write_output(config, &formats::verdict_to_json(&verdict))?;
    if verdict.holds {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn cmd_lemma(config: &CliConfig) -> Result<(), Failure> {
    let k = formats::parse_points(&read_input(config)?)?;
    let s = k.lemma_translate()?;
    let lhs = k.translated_sup_modulus(s);
    let rhs = k.sup_modulus() + s.norm();
    write_output(config, &formats::lemma_to_json(s, lhs, rhs))?;
    if (lhs - rhs).abs() <= LEMMA_TOL {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

fn cmd_gen(config: &CliConfig) -> Result<(), Failure> {
    let kind = config
        .ensemble
        .as_deref()
        .ok_or_else(|| Failure::Input("--ensemble is required".into()))?;
    let dim = config
        .dim
        .ok_or_else(|| Failure::Input("--dim is required".into()))?;
    let text = if kind == "sequence" {
        formats::sequence_to_json(&generate_sequence(dim, config.seed, config.scale)?)
    } else {
        let kind: EnsembleKind = kind.parse()?;
        let spec = EnsembleSpec {
            kind,
            dim,
            seed: config.seed,
            scale: config.scale,
        };
        formats::matrix_to_json(&generate(&spec)?)
    };
    write_output(config, &text)
}
