//! Command-line front end for `isolat`: JSON run configs, DOT/JSON export,
//! and the four commands.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub mod commands;
pub mod config;
pub mod export;

use config::{Command, RunConfig};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_ORACLE: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(m: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, message: m.into() }
    }

    pub fn validation(m: impl Into<String>) -> Self {
        CliError { code: EXIT_VALIDATION, message: m.into() }
    }

    pub fn oracle(m: impl Into<String>) -> Self {
        CliError { code: EXIT_ORACLE, message: m.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<isolat::Error> for CliError {
    fn from(e: isolat::Error) -> Self {
        use isolat::Error as E;
        let code = match &e {
            E::PrecisionExhausted => EXIT_PRECISION,
            E::UnsupportedConfig(_) | E::InvalidSymbol(_) => EXIT_CONFIG,
            E::InvalidParams(_) | E::ValidationFailed(_) | E::InputShapeMismatch(_) => EXIT_VALIDATION,
            _ => EXIT_INTERNAL,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        // a closed stdout (`| head`) is not a failure
        let code = if e.kind() == std::io::ErrorKind::BrokenPipe { 0 } else { EXIT_INTERNAL };
        CliError { code, message: format!("i/o: {e}") }
    }
}

#[derive(Debug, Parser)]
#[command(name = "isolat", version, about = "Lattice models of isogeny graphs of ordinary abelian surfaces")]
pub struct Cli {
    /// Overrides the config's "command" field.
    #[arg(value_enum)]
    pub command: Option<Command>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for machine-readable outputs.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub allow_cyclic: bool,
    /// goup: run every symbol and parity instead of one start.
    #[arg(long)]
    pub matrix: bool,
}

impl Cli {
    /// The config file (or defaults) with flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if self.command.is_some() {
            cfg.command = self.command;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if self.precision.is_some() {
            cfg.algebra.precision = self.precision;
        }
        if self.depth.is_some() {
            cfg.depth = self.depth;
        }
        cfg.goup.allow_cyclic |= self.allow_cyclic;
        cfg.matrix |= self.matrix;
        if cfg.command.is_none() {
            return Err(CliError::config("no command given on the command line or in the config"));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match cfg.command {
        Some(Command::Neighbors) => commands::neighbors(cfg, out),
        Some(Command::Synth) => commands::synth(cfg, out),
        Some(Command::Goup) => commands::goup(cfg, out),
        Some(Command::Oracle) => commands::oracle(cfg, out),
        None => Err(CliError::config("no command")),
    }
}
