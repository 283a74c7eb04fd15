//! The `hermite-lf` command line.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hermite_lf::analysis::{amplification_scan, dispersion_order_scan, zero_eigen_structure, ZeroEigenStructure};

use crate::config::{parse_list, Settings};
use crate::conserve::{conservation_trace, write_conservation, CONSERVATION_TOLERANCE};
use crate::experiments::catalog_text;
use crate::report::emit_csv;
use crate::runner::run_experiment;
use crate::{HarnessError, Result};

#[derive(Parser, Debug)]
#[command(name = "hermite-lf", version, about = "Hermite-leapfrog wave experiments")]
struct Cli {
    /// Settings file of `key = value` lines; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a catalog experiment and write errors and rates CSV files
    Run {
        /// Experiment name or unique prefix (see `list`)
        experiment: Option<String>,
        /// Orders, comma separated
        #[arg(long)]
        m: Option<String>,
        /// CFL constants, comma separated
        #[arg(long)]
        cfl: Option<String>,
        /// Cells per direction, comma separated and strictly increasing
        #[arg(long)]
        resolutions: Option<String>,
        /// hermite-leapfrog, modified or dual-hermite
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        final_time: Option<f64>,
        /// Output directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dispersion order, zero-eigenvalue structure and amplification radius
    Dispersion {
        /// Orders, comma separated
        #[arg(long)]
        m: Option<String>,
        /// Time steps in units of the grid spacing, comma separated
        #[arg(long)]
        lambda: Option<String>,
        /// Also print the eigenvalue error at every sampled wavenumber
        #[arg(long)]
        scan: bool,
    },
    /// Trace the conserved quantities from random periodic data
    Conserve {
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        cfl: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        /// Cells on [0, 1]
        #[arg(long)]
        resolution: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for conservation.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the experiment catalog
    List,
}

fn list_opt<T: std::str::FromStr>(s: &Option<String>) -> Result<Option<Vec<T>>> {
    s.as_deref().map(parse_list).transpose()
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 on configuration error, 2 on numerical
/// failure.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let HarnessError::UnknownExperiment(_) = e {
                let _ = write!(err, "available experiments:\n{}", catalog_text());
            }
            e.exit_code()
        }
    }
}

fn file_settings(path: &Option<PathBuf>) -> Result<Settings> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", p.display())))?;
            Settings::parse_file(&text)
        }
        None => Ok(Settings::default()),
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Result<i32> {
    let file = file_settings(&cli.config)?;
    match cli.command {
        Command::List => {
            write!(out, "{}", catalog_text())?;
            Ok(0)
        }
        Command::Run {
            experiment,
            m,
            cfl,
            resolutions,
            variant,
            final_time,
            out: dir,
        } => {
            let flags = Settings {
                experiment,
                m: list_opt(&m)?,
                cfl: list_opt(&cfl)?,
                resolutions: list_opt(&resolutions)?,
                variant,
                final_time,
                out: dir,
                ..Settings::default()
            };
            let config = file.overlay(flags).experiment_config()?;
            let report = run_experiment(&config)?;
            let paths = emit_csv(&report, &config.out)?;
            writeln!(out, "experiment,variant,m,cfl,rate,points_used")?;
            for r in &report.rates {
                writeln!(out, "{},{},{},{},{:.3},{}", r.experiment, r.variant, r.m, r.cfl, r.rate, r.points_used)?;
            }
            for p in paths {
                writeln!(out, "wrote {}", p.display())?;
            }
            if report.failures.is_empty() {
                Ok(0)
            } else {
                Err(HarnessError::Numerical(report.failures.join("; ")))
            }
        }
        Command::Dispersion { m, lambda, scan } => {
            let flags = Settings {
                m: list_opt(&m)?,
                lambda: list_opt(&lambda)?,
                scan: scan.then_some(true),
                ..Settings::default()
            };
            let s = file.overlay(flags);
            let orders = s.m.unwrap_or_else(|| vec![0, 1, 2, 3, 4]);
            let lambdas = s.lambda.unwrap_or_else(|| vec![0.2, 0.9]);
            dispersion(out, &orders, &lambdas, s.scan.unwrap_or(false))?;
            Ok(0)
        }
        Command::Conserve {
            m,
            cfl,
            steps,
            resolution,
            seed,
            out: dir,
        } => {
            let flags = Settings {
                m: list_opt(&m)?,
                cfl: list_opt(&cfl)?,
                steps,
                resolution,
                seed,
                out: dir,
                ..Settings::default()
            };
            let s = file.overlay(flags);
            let orders = s.m.unwrap_or_else(|| vec![0, 1, 2, 3]);
            let cfls = s.cfl.unwrap_or_else(|| vec![0.1, 0.5, 0.9]);
            let report = conservation_trace(
                &orders,
                &cfls,
                s.resolution.unwrap_or(16),
                s.steps.unwrap_or(100),
                s.seed.unwrap_or(0),
            )?;
            let dir = s.out.unwrap_or_else(|| PathBuf::from("results"));
            fs::create_dir_all(&dir)?;
            let path = dir.join("conservation.csv");
            let mut w = BufWriter::new(File::create(&path)?);
            write_conservation(&mut w, &report.rows)?;
            w.flush()?;
            writeln!(out, "max relative drift of Q and R: {:e}", report.max_drift)?;
            writeln!(out, "wrote {}", path.display())?;
            if report.max_drift <= CONSERVATION_TOLERANCE {
                Ok(0)
            } else {
                Err(HarnessError::Numerical(format!(
                    "drift {:e} exceeds {CONSERVATION_TOLERANCE:e}",
                    report.max_drift
                )))
            }
        }
    }
}

/// Human-readable name of a zero-eigenvalue structure.
pub fn structure_name(s: ZeroEigenStructure) -> String {
    match s {
        ZeroEigenStructure::Simple => "simple".into(),
        ZeroEigenStructure::GeneralizedEigenvector => "generalized eigenvector present".into(),
        ZeroEigenStructure::Degenerate { nullity } => format!("degenerate null space of dimension {nullity}"),
    }
}

/// Wavenumbers for the amplification radius: 201 points on `[-pi, pi]`.
fn k_samples() -> Vec<f64> {
    use std::f64::consts::PI;
    (0..=200).map(|i| -PI + 2.0 * PI * i as f64 / 200.0).collect()
}

fn dispersion(out: &mut impl Write, orders: &[usize], lambdas: &[f64], scan: bool) -> Result<()> {
    if orders.is_empty() || lambdas.is_empty() {
        return Err(HarnessError::Config("empty order or lambda list".into()));
    }
    if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(HarnessError::Config(format!("lambda must be positive, got {l}")));
    }
    let ks = k_samples();
    let mut scans = Vec::new();
    writeln!(out, "m,lambda,order,full_order,zero_eigenvalue,max_amplification")?;
    for &m in orders {
        for &lambda in lambdas {
            let structure = zero_eigen_structure(m, lambda)?;
            let radius = amplification_scan(m, lambda, &ks)?;
            let s = dispersion_order_scan(m, lambda)?;
            writeln!(
                out,
                "{m},{lambda},{:.3},{},{},{radius}",
                s.order,
                2 * m + 2,
                structure_name(structure)
            )?;
            scans.push((m, lambda, s));
        }
    }
    if scan {
        writeln!(out)?;
        writeln!(out, "m,lambda,k,relative_error,second_relative_error,fitted")?;
        for (m, lambda, s) in &scans {
            for (i, k) in s.ks.iter().enumerate() {
                let fitted = if s.fitted.contains(&i) { 1 } else { 0 };
                writeln!(out, "{m},{lambda},{k},{},{},{fitted}", s.errors[i], s.second_errors[i])?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hermite-lf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn list_prints_the_catalog() {
        let (code, out, _) = run_args(&["list"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
    }

    #[test]
    fn unknown_experiment_prints_catalog() {
        let (code, _, err) = run_args(&["run", "nope"]);
        assert_eq!(code, 1);
        assert!(err.contains("standing-wave-1d") && err.contains("gaussian-reflect-2d"));
    }

    #[test]
    fn bad_flags_are_configuration_errors() {
        assert_eq!(run_args(&["run", "standing-wave", "--resolutions", ""]).0, 1);
        assert_eq!(run_args(&["run", "standing-wave", "--final-time", "abc"]).0, 1);
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["dispersion", "--lambda", "-1"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn odd_order_reports_generalized_eigenvector() {
        let (code, out, _) = run_args(&["dispersion", "--m", "1", "--lambda", "0.9"]);
        assert_eq!(code, 0);
        assert!(out.contains("generalized eigenvector present"), "{out}");
    }
}
