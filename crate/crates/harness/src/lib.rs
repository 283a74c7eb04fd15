//! Experiment runner for the `hermite-lf` crate: a catalog of named
//! convergence and stability studies, resolution sweeps run in parallel,
//! CSV reports and the `hermite-lf` command line.

use std::fmt;

pub mod cli;
pub mod config;
pub mod conserve;
pub mod experiments;
pub mod report;
pub mod runner;

pub use config::{ExperimentConfig, Settings};
pub use conserve::{conservation_trace, ConservationReport};
pub use experiments::{lookup, Experiment, CATALOG};
pub use report::{emit_csv, ExperimentReport};
pub use runner::run_experiment;

#[derive(Debug, Clone, PartialEq)]
pub enum HarnessError {
    Config(String),
    UnknownExperiment(String),
    Numerical(String),
    Io(String),
}

impl HarnessError {
    /// 1 for configuration and IO problems, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(s) => write!(f, "configuration error: {s}"),
            HarnessError::UnknownExperiment(s) => write!(f, "unknown experiment '{s}'"),
            HarnessError::Numerical(s) => write!(f, "numerical failure: {s}"),
            HarnessError::Io(s) => write!(f, "io error: {s}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<hermite_lf::Error> for HarnessError {
    fn from(e: hermite_lf::Error) -> Self {
        use hermite_lf::Error as E;
        match e {
            E::Config(_) | E::OrderTooLarge(_) | E::Unsupported(_) | E::LengthMismatch { .. } => {
                HarnessError::Config(e.to_string())
            }
            _ => HarnessError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
