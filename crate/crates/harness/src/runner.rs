//! Sweeps over orders, CFL constants and resolutions.

use std::time::Instant;

use hermite_lf::analysis::{convergence_rate, l2_error, l2_error_2d};
use hermite_lf::stepper1d::{initialize_state, Stepper1d};
use hermite_lf::stepper2d::{initialize_state_2d, Stepper2d};
use hermite_lf::{Error, Grid1d, Grid2d, Problem1d, Problem2d, SchemeConfig};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::experiments::{Measure, ProblemRef};
use crate::report::{ErrorRow, ExperimentReport, RateRow, Snapshot, TraceRow};
use crate::Result;

/// A stability run fails once its nodal energy grows past this multiple of
/// the initial value.
pub const ENERGY_GROWTH_LIMIT: f64 = 10.0;

/// Samples per stability trace.
const TRACE_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy)]
struct Task {
    m: usize,
    cfl: f64,
    k: usize,
}

#[derive(Debug)]
struct Outcome {
    task: Task,
    h: f64,
    /// `(field, l2 error)`; empty for stability runs.
    errors: Vec<(&'static str, f64)>,
    steps: usize,
    wall: f64,
    failure: Option<String>,
    trace: Vec<TraceRow>,
    snapshot: Option<Snapshot>,
}

impl Outcome {
    fn new(task: Task, h: f64, steps: usize) -> Self {
        Outcome {
            task,
            h,
            errors: Vec::new(),
            steps,
            wall: 0.0,
            failure: None,
            trace: Vec::new(),
            snapshot: None,
        }
    }
}

/// Runs the full sweep. Runs are independent and execute in parallel; rows
/// come out in sweep order (m, then CFL, then resolution). An unstable run
/// is recorded with NaN errors and listed in `failures`; the sweep goes on.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let tasks: Vec<Task> = config
        .orders
        .iter()
        .flat_map(|&m| {
            config.cfls.iter().flat_map(move |&cfl| {
                config
                    .resolutions_for(m)
                    .into_iter()
                    .map(move |k| Task { m, cfl, k })
            })
        })
        .collect();
    let outcomes: Vec<Outcome> = tasks
        .par_iter()
        .map(|&t| run_task(config, t))
        .collect::<Result<_>>()?;
    Ok(assemble(config, outcomes))
}

fn run_task(config: &ExperimentConfig, task: Task) -> Result<Outcome> {
    let scheme = SchemeConfig::new(task.m, task.cfl, config.variant)?;
    let label = format!(
        "{} m={} cfl={} K={}",
        config.experiment.name, task.m, task.cfl, task.k
    );
    let start = Instant::now();
    let mut out = match config.experiment.problem() {
        ProblemRef::One(p) => run_1d(p, scheme, task, config.final_time)?,
        ProblemRef::Two(p) => match config.experiment.measure {
            Measure::Convergence => run_2d(p, scheme, task, config.final_time)?,
            Measure::Stability => run_stability(p, scheme, task, config.final_time, config.experiment.name)?,
        },
    };
    out.wall = start.elapsed().as_secs_f64();
    out.failure = out.failure.map(|f| format!("{label}: {f}"));
    Ok(out)
}

/// Maps an instability to a recorded failure and passes other errors on.
fn unstable(e: Error) -> Result<String> {
    match e {
        Error::Instability { .. } => Ok(e.to_string()),
        other => Err(other.into()),
    }
}

fn run_1d(p: &dyn Problem1d, scheme: SchemeConfig, task: Task, final_time: f64) -> Result<Outcome> {
    let (a, b) = p.domain();
    let grid = Grid1d::periodic(a, b, task.k)?;
    let (dt, steps) = Stepper1d::fitted_time_step(p, &grid, &scheme, final_time);
    let stepper = Stepper1d::new(p, grid, scheme, dt)?;
    let mut state = initialize_state(p, grid, &scheme, 0.0, dt);
    let mut out = Outcome::new(task, grid.h, steps);
    for _ in 0..steps {
        if let Err(e) = stepper.step(&mut state, p) {
            out.failure = Some(unstable(e)?);
            break;
        }
    }
    let system = p.system();
    let errors = match out.failure {
        None => l2_error(&state, p)?,
        Some(_) => vec![f64::NAN; system.field_count()],
    };
    out.errors = errors
        .into_iter()
        .enumerate()
        .map(|(f, e)| (system.field_name(f), e))
        .collect();
    Ok(out)
}

fn grid_2d(p: &dyn Problem2d, k: usize) -> Result<Grid2d> {
    Ok(Grid2d::new(p.x_range(), p.y_range(), k, k, p.boundary())?)
}

fn run_2d(p: &dyn Problem2d, scheme: SchemeConfig, task: Task, final_time: f64) -> Result<Outcome> {
    let grid = grid_2d(p, task.k)?;
    let (dt, steps) = Stepper2d::fitted_time_step(&grid, &scheme, final_time);
    let stepper = Stepper2d::new(p, grid, scheme, dt)?;
    let mut state = initialize_state_2d(p, grid, scheme.m, 0.0, dt);
    let mut out = Outcome::new(task, grid.hx.min(grid.hy), steps);
    for _ in 0..steps {
        if let Err(e) = stepper.step(&mut state) {
            out.failure = Some(unstable(e)?);
            break;
        }
    }
    let errors = match out.failure {
        None => l2_error_2d(&state, p)?,
        Some(_) => [f64::NAN; 3],
    };
    let system = p.system();
    out.errors = errors
        .into_iter()
        .enumerate()
        .map(|(f, e)| (system.field_name(f), e))
        .collect();
    Ok(out)
}

fn run_stability(
    p: &dyn Problem2d,
    scheme: SchemeConfig,
    task: Task,
    final_time: f64,
    name: &'static str,
) -> Result<Outcome> {
    let grid = grid_2d(p, task.k)?;
    let (dt, steps) = Stepper2d::fitted_time_step(&grid, &scheme, final_time);
    let stepper = Stepper2d::new(p, grid, scheme, dt)?;
    let mut state = initialize_state_2d(p, grid, scheme.m, 0.0, dt);
    let mut out = Outcome::new(task, grid.hx.min(grid.hy), steps);
    let stride = (steps / TRACE_SAMPLES).max(1);
    let e0 = state.nodal_energy();
    let sample = |state: &hermite_lf::StaggeredState2d| TraceRow {
        experiment: name,
        m: task.m,
        cfl: task.cfl,
        k: task.k,
        step: state.steps,
        time: state.t_primary,
        energy: state.nodal_energy(),
    };
    out.trace.push(sample(&state));
    for n in 1..=steps {
        if let Err(e) = stepper.step(&mut state) {
            out.failure = Some(unstable(e)?);
            break;
        }
        if n % stride == 0 || n == steps {
            let row = sample(&state);
            if row.energy > ENERGY_GROWTH_LIMIT * e0 {
                out.failure = Some(format!("nodal energy grew from {e0} to {} by step {n}", row.energy));
                out.trace.push(row);
                break;
            }
            out.trace.push(row);
        }
    }
    out.snapshot = Some(Snapshot {
        m: task.m,
        cfl: task.cfl,
        k: task.k,
        values: state.snapshot(),
    });
    Ok(out)
}

fn assemble(config: &ExperimentConfig, outcomes: Vec<Outcome>) -> ExperimentReport {
    let experiment = config.experiment.name;
    let variant = config.variant.name();
    let mut report = ExperimentReport {
        experiment,
        ..ExperimentReport::default()
    };
    for o in &outcomes {
        for &(field, l2_error) in &o.errors {
            report.errors.push(ErrorRow {
                experiment,
                variant,
                m: o.task.m,
                cfl: o.task.cfl,
                k: o.task.k,
                h: o.h,
                field,
                l2_error,
                steps: o.steps,
                wall_seconds: o.wall,
            });
        }
        report.traces.extend(o.trace.iter().cloned());
        report.snapshots.extend(o.snapshot.clone());
        report.failures.extend(o.failure.clone());
    }
    // One rate per (m, cfl), fitted to field 0.
    for &m in &config.orders {
        for &cfl in &config.cfls {
            let points: Vec<(f64, f64)> = outcomes
                .iter()
                .filter(|o| o.task.m == m && o.task.cfl == cfl)
                .filter_map(|o| o.errors.first().map(|&(_, e)| (o.h, e)))
                .collect();
            if let Ok(fit) = convergence_rate(&points) {
                report.rates.push(RateRow {
                    experiment,
                    variant,
                    m,
                    cfl,
                    rate: fit.rate,
                    points_used: fit.used,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(k: usize, error: f64, failure: Option<&str>) -> Outcome {
        let mut o = Outcome::new(Task { m: 1, cfl: 0.9, k }, 2.0 / k as f64, k);
        o.errors = vec![("p", error), ("v", error)];
        o.failure = failure.map(String::from);
        o
    }

    #[test]
    fn instability_becomes_a_recorded_failure() {
        assert!(unstable(Error::Instability { step: 7 }).is_ok());
        assert!(unstable(Error::Config("x".into())).is_err());
    }

    #[test]
    fn nan_runs_are_kept_and_skipped_by_the_fit() {
        let mut config = ExperimentConfig::new("standing-wave-1d").unwrap();
        config.orders = vec![1];
        let outcomes = vec![
            outcome(10, 1e-2, None),
            outcome(20, 2.5e-3, None),
            outcome(40, f64::NAN, Some("blew up")),
            outcome(80, 1.5625e-4, None),
        ];
        let r = assemble(&config, outcomes);
        assert_eq!(r.errors.len(), 8);
        assert!(r.errors[4].l2_error.is_nan());
        assert_eq!(r.failures, vec!["blew up".to_string()]);
        assert_eq!(r.rates.len(), 1);
        assert_eq!(r.rates[0].points_used, 3);
        assert!((r.rates[0].rate - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fewer_than_three_usable_points_give_no_rate() {
        let mut config = ExperimentConfig::new("standing-wave-1d").unwrap();
        config.orders = vec![1];
        let outcomes = vec![
            outcome(10, 1e-2, None),
            outcome(20, f64::NAN, Some("a")),
            outcome(40, 6.25e-4, None),
        ];
        assert!(assemble(&config, outcomes).rates.is_empty());
    }
}
