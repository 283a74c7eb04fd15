//! Report rows and CSV output.
//!
//! Numbers are written with `Display`, which gives plain decimal text that
//! round-trips exactly.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub experiment: &'static str,
    pub variant: &'static str,
    pub m: usize,
    pub cfl: f64,
    pub k: usize,
    pub h: f64,
    pub field: &'static str,
    /// NaN when the run went unstable.
    pub l2_error: f64,
    pub steps: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub experiment: &'static str,
    pub variant: &'static str,
    pub m: usize,
    pub cfl: f64,
    pub rate: f64,
    pub points_used: usize,
}

/// Periodic sample of a stability run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub experiment: &'static str,
    pub m: usize,
    pub cfl: f64,
    pub k: usize,
    pub step: usize,
    pub time: f64,
    pub energy: f64,
}

/// Field 0 at the primary nodes, one row per node with y outer and x inner.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub m: usize,
    pub cfl: f64,
    pub k: usize,
    pub values: Vec<(f64, f64, f64)>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentReport {
    pub experiment: &'static str,
    pub errors: Vec<ErrorRow>,
    pub rates: Vec<RateRow>,
    pub traces: Vec<TraceRow>,
    pub snapshots: Vec<Snapshot>,
    /// One message per unstable or failed run.
    pub failures: Vec<String>,
}

impl ExperimentReport {
    pub fn rate(&self, m: usize, cfl: f64) -> Option<f64> {
        self.rates
            .iter()
            .find(|r| r.m == m && r.cfl == cfl)
            .map(|r| r.rate)
    }
}

pub const ERROR_HEADER: &str = "experiment,variant,m,cfl,K,h,field,l2_error,steps,wall_seconds";
pub const RATE_HEADER: &str = "experiment,variant,m,cfl,rate,points_used";
pub const TRACE_HEADER: &str = "experiment,m,cfl,K,step,time,energy";
pub const SNAPSHOT_HEADER: &str = "x,y,value";

pub fn write_errors(w: &mut impl Write, rows: &[ErrorRow]) -> std::io::Result<()> {
    writeln!(w, "{ERROR_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.experiment, r.variant, r.m, r.cfl, r.k, r.h, r.field, r.l2_error, r.steps, r.wall_seconds
        )?;
    }
    Ok(())
}

pub fn write_rates(w: &mut impl Write, rows: &[RateRow]) -> std::io::Result<()> {
    writeln!(w, "{RATE_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{},{}", r.experiment, r.variant, r.m, r.cfl, r.rate, r.points_used)?;
    }
    Ok(())
}

pub fn write_traces(w: &mut impl Write, rows: &[TraceRow]) -> std::io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{},{},{}", r.experiment, r.m, r.cfl, r.k, r.step, r.time, r.energy)?;
    }
    Ok(())
}

pub fn write_snapshot(w: &mut impl Write, s: &Snapshot) -> std::io::Result<()> {
    writeln!(w, "{SNAPSHOT_HEADER}")?;
    for (x, y, v) in &s.values {
        writeln!(w, "{x},{y},{v}")?;
    }
    Ok(())
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()
}

/// Writes `<name>_errors.csv` and `<name>_rates.csv` into `dir`, plus
/// `<name>_trace.csv` and one `<name>_snapshot_m<m>_cfl<c>_K<k>.csv` per
/// snapshot when present. Returns the paths written.
pub fn emit_csv(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let name = report.experiment;
    let mut paths = Vec::new();
    let errors = dir.join(format!("{name}_errors.csv"));
    write_file(&errors, |w| write_errors(w, &report.errors))?;
    paths.push(errors);
    let rates = dir.join(format!("{name}_rates.csv"));
    write_file(&rates, |w| write_rates(w, &report.rates))?;
    paths.push(rates);
    if !report.traces.is_empty() {
        let p = dir.join(format!("{name}_trace.csv"));
        write_file(&p, |w| write_traces(w, &report.traces))?;
        paths.push(p);
    }
    for s in &report.snapshots {
        let p = dir.join(format!("{name}_snapshot_m{}_cfl{}_K{}.csv", s.m, s.cfl, s.k));
        write_file(&p, |w| write_snapshot(w, s))?;
        paths.push(p);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_gives_header_only_files() {
        let mut e = Vec::new();
        let mut r = Vec::new();
        write_errors(&mut e, &[]).unwrap();
        write_rates(&mut r, &[]).unwrap();
        assert_eq!(String::from_utf8(e).unwrap(), format!("{ERROR_HEADER}\n"));
        assert_eq!(String::from_utf8(r).unwrap(), format!("{RATE_HEADER}\n"));
    }

    #[test]
    fn numbers_are_plain_decimals() {
        let row = ErrorRow {
            experiment: "x",
            variant: "modified",
            m: 2,
            cfl: 0.9,
            k: 40,
            h: 0.05,
            field: "p",
            l2_error: 1.25e-9,
            steps: 92,
            wall_seconds: 0.5,
        };
        let mut out = Vec::new();
        write_errors(&mut out, &[row]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line, "x,modified,2,0.9,40,0.05,p,0.00000000125,92,0.5");
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn snapshot_rows() {
        let s = Snapshot {
            m: 1,
            cfl: 0.9,
            k: 2,
            values: vec![(0.0, 0.0, 1.0), (0.5, 0.0, 2.0)],
        };
        let mut out = Vec::new();
        write_snapshot(&mut out, &s).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "x,y,value\n0,0,1\n0.5,0,2\n");
    }
}
