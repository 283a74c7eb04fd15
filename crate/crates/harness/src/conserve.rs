//! Conservation traces of `Q` and `R` from random periodic data.

use std::io::Write;

use hermite_lf::analysis::state_conserved_quantities;
use hermite_lf::problems::{Mode, TravelingWaves};
use hermite_lf::stepper1d::{initialize_state, Stepper1d};
use hermite_lf::{Grid1d, SchemeConfig, Variant, MAX_ORDER};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::{HarnessError, Result};

/// Largest accepted `|Q(t) / Q(0) - 1|` or `|R(t) / R(0) - 1|`.
pub const CONSERVATION_TOLERANCE: f64 = 1e-10;

/// Fourier modes per traveling direction.
const MODES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationRow {
    pub m: usize,
    pub cfl: f64,
    pub step: usize,
    pub time: f64,
    pub q: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationReport {
    pub rows: Vec<ConservationRow>,
    /// Largest relative drift of `Q` or `R` over every trace.
    pub max_drift: f64,
}

/// Unit-speed traveling waves on `[0, 1]` with `MODES` random modes each
/// way, coefficients uniform in `[-1, 1]`.
pub fn random_periodic_data(seed: u64) -> TravelingWaves {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut modes = || -> Vec<Mode> {
        (1..=MODES)
            .map(|w| Mode {
                wavenumber: w,
                a: rng.gen_range(-1.0..1.0),
                b: rng.gen_range(-1.0..1.0),
            })
            .collect()
    };
    let right = modes();
    let left = modes();
    TravelingWaves {
        domain: (0.0, 1.0),
        right,
        left,
    }
}

/// Steps the Hermite-leapfrog scheme `steps` times for every `(m, cfl)` on
/// `k` cells and records `Q` and `R` after each step.
pub fn conservation_trace(orders: &[usize], cfls: &[f64], k: usize, steps: usize, seed: u64) -> Result<ConservationReport> {
    if orders.is_empty() || cfls.is_empty() {
        return Err(HarnessError::Config("empty order or CFL list".into()));
    }
    if let Some(&m) = orders.iter().find(|&&m| m > MAX_ORDER) {
        return Err(HarnessError::Config(format!("order {m} exceeds the maximum {MAX_ORDER}")));
    }
    let problem = random_periodic_data(seed);
    let grid = Grid1d::periodic(0.0, 1.0, k)?;
    let pairs: Vec<(usize, f64)> = orders
        .iter()
        .flat_map(|&m| cfls.iter().map(move |&c| (m, c)))
        .collect();
    let traces: Vec<Vec<ConservationRow>> = pairs
        .par_iter()
        .map(|&(m, cfl)| -> Result<Vec<ConservationRow>> {
            let scheme = SchemeConfig::new(m, cfl, Variant::HermiteLeapfrog)?;
            let dt = scheme.time_step(grid.h, 1.0);
            let stepper = Stepper1d::new(&problem, grid, scheme, dt)?;
            let mut state = initialize_state(&problem, grid, &scheme, 0.0, dt);
            let mut rows = Vec::with_capacity(steps + 1);
            for n in 0..=steps {
                if n > 0 {
                    stepper.step(&mut state, &problem)?;
                }
                let (q, r) = state_conserved_quantities(&stepper, &state, &problem)?;
                rows.push(ConservationRow {
                    m,
                    cfl,
                    step: n,
                    time: state.t_primary,
                    q,
                    r,
                });
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let mut max_drift: f64 = 0.0;
    for t in &traces {
        let (q0, r0) = (t[0].q, t[0].r);
        for row in t {
            max_drift = max_drift.max((row.q / q0 - 1.0).abs()).max((row.r / r0 - 1.0).abs());
        }
    }
    Ok(ConservationReport {
        rows: traces.into_iter().flatten().collect(),
        max_drift,
    })
}

pub const CONSERVATION_HEADER: &str = "m,cfl,step,time,q,r";

pub fn write_conservation(w: &mut impl Write, rows: &[ConservationRow]) -> std::io::Result<()> {
    writeln!(w, "{CONSERVATION_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{},{}", r.m, r.cfl, r.step, r.time, r.q, r.r)?;
    }
    Ok(())
}
