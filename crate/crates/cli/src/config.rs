use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use normaloid_core::numrange::{DEFAULT_SAMPLES, MIN_SAMPLES};
use normaloid_core::sequences::{DEFAULT_GRID_ANGLES, DEFAULT_GRID_RADII};

#[derive(Debug, Parser)]
#[command(name = "normaloid", version, about = "Numerical ranges, radii and normaloid checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Boundary CSV of the numerical range (optionally an SVG plot)
    Range,
    /// Numerical radius and an extremal point
    Radius,
    /// Spectral norm
    Norm,
    /// Normaloid report
    Analyze,
    /// Check sup_{|λ|≤M} sup_n |x_n+λ| = 2M for a sequence
    VerifySequence,
    /// Maximal-modulus translation of a finite point set
    Lemma,
    /// Generate a seeded matrix or sequence
    Gen,
}

/// Every flag, all optional so that `--config` can supply them.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// Input JSON file
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// SVG plot destination for `range`
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Number of sweep directions
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Relative normaloid tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub grid_angles: Option<usize>,
    #[arg(long, global = true)]
    pub grid_radii: Option<usize>,
    /// Ensemble kind for `gen`, or `sequence`
    #[arg(long, global = true)]
    pub ensemble: Option<String>,
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub scale: Option<f64>,
    /// JSON file with any of the flags above (snake_case keys); explicit
    /// flags win
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Flags {
    /// Fills unset fields from `base`.
    pub fn or(self, base: Flags) -> Flags {
        Flags {
            input: self.input.or(base.input),
            out: self.out.or(base.out),
            svg: self.svg.or(base.svg),
            samples: self.samples.or(base.samples),
            tol: self.tol.or(base.tol),
            grid_angles: self.grid_angles.or(base.grid_angles),
            grid_radii: self.grid_radii.or(base.grid_radii),
            ensemble: self.ensemble.or(base.ensemble),
            dim: self.dim.or(base.dim),
            seed: self.seed.or(base.seed),
            scale: self.scale.or(base.scale),
            config: self.config,
        }
    }
}

/// Resolved settings with defaults applied and ranges checked.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub samples: usize,
    pub tol: f64,
    pub grid_angles: usize,
    pub grid_radii: usize,
    pub ensemble: Option<String>,
    pub dim: Option<usize>,
    pub seed: u64,
    pub scale: f64,
}

impl CliConfig {
    pub fn resolve(command: Command, flags: Flags) -> Result<Self, String> {
        let flags = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                let base: Flags = serde_json::from_str(&text)
                    .map_err(|e| format!("invalid config {}: {e}", path.display()))?;
                flags.or(base)
            }
            None => flags,
        };
        let config = CliConfig {
            command,
            input_path: flags.input,
            output_path: flags.out,
            svg_path: flags.svg,
            samples: flags.samples.unwrap_or(DEFAULT_SAMPLES),
            tol: flags.tol.unwrap_or(1e-8),
            grid_angles: flags.grid_angles.unwrap_or(DEFAULT_GRID_ANGLES),
            grid_radii: flags.grid_radii.unwrap_or(DEFAULT_GRID_RADII),
            ensemble: flags.ensemble,
            dim: flags.dim,
            seed: flags.seed.unwrap_or(0),
            scale: flags.scale.unwrap_or(1.0),
        };
        if config.samples < MIN_SAMPLES {
            return Err(format!("--samples must be at least {MIN_SAMPLES}"));
        }
        if !(config.tol > 0.0 && config.tol.is_finite()) {
            return Err("--tol must be positive".into());
        }
        if config.grid_angles == 0 || config.grid_radii == 0 {
            return Err("--grid-angles and --grid-radii must be positive".into());
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = CliConfig::resolve(Command::Range, Flags::default()).unwrap();
        assert_eq!(c.samples, 512);
        assert_eq!(c.tol, 1e-8);
        assert_eq!((c.grid_angles, c.grid_radii), (64, 16));
    }

    #[test]
    fn flags_override_base() {
        let flags = Flags {
            samples: Some(64),
            ..Flags::default()
        };
        let base = Flags {
            samples: Some(32),
            dim: Some(3),
            ..Flags::default()
        };
        let merged = flags.or(base);
        assert_eq!(merged.samples, Some(64));
        assert_eq!(merged.dim, Some(3));
    }

    #[test]
    fn rejects_out_of_range() {
        for flags in [
            Flags { samples: Some(4), ..Flags::default() },
            Flags { tol: Some(0.0), ..Flags::default() },
            Flags { grid_radii: Some(0), ..Flags::default() },
        ] {
            assert!(CliConfig::resolve(Command::Analyze, flags).is_err());
        }
    }
}
