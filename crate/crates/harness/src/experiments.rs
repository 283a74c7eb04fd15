//! Built-in experiment catalog.

use std::f64::consts::PI;

use hermite_lf::problems::{
    AcousticMode, Advection, GaussianPulse, MaxwellCavity, PressureVelocityMode, StandingWave, VariableSpeed,
};
use hermite_lf::{Problem1d, Problem2d, Variant};

use crate::HarnessError;

static MAXWELL: MaxwellCavity = MaxwellCavity { wx: 8.0 * PI, wy: 8.0 * PI };
static PULSE: GaussianPulse = GaussianPulse { center: (0.3, 0.3), width: 0.002 };

#[derive(Clone, Copy)]
pub enum ProblemRef {
    One(&'static dyn Problem1d),
    Two(&'static dyn Problem2d),
}

/// What a run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// L2 errors against the exact solution and fitted rates.
    Convergence,
    /// Energy trace and a final snapshot; no exact solution.
    Stability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentId {
    StandingWave,
    VariableSpeed,
    AdvectionModified,
    PvModified,
    Acoustics,
    MaxwellTm,
    GaussianReflect,
}

#[derive(Debug, Clone, Copy)]
pub struct Experiment {
    pub id: ExperimentId,
    pub name: &'static str,
    pub summary: &'static str,
    /// Supported variants; the first is the default.
    pub variants: &'static [Variant],
    pub orders: &'static [usize],
    pub cfl: f64,
    pub final_time: f64,
    pub measure: Measure,
}

const HL: Variant = Variant::HermiteLeapfrog;
const MODIFIED: Variant = Variant::Modified;
const DH: Variant = Variant::DualHermite;

pub const CATALOG: [Experiment; 7] = [
    Experiment {
        id: ExperimentId::StandingWave,
        name: "standing-wave-1d",
        summary: "p = cos(2 pi t) sin(2 pi x) on [-1, 1], T = 4.13",
        variants: &[HL, DH, MODIFIED],
        orders: &[0, 1, 2, 3],
        cfl: 0.9,
        final_time: 4.13,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::VariableSpeed,
        name: "variable-speed-1d",
        summary: "p = v = sin(x - t), c^2 = 1 + sin(x)/2 on [0, 2 pi], T = 3.2",
        variants: &[HL, DH],
        orders: &[0, 1, 2, 3],
        cfl: 0.9,
        final_time: 3.2,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::AdvectionModified,
        name: "advection-modified-1d",
        summary: "u = sin(3 pi (x - t)) on [-1, 1], modified scheme, T = 4.13",
        variants: &[MODIFIED, HL, DH],
        orders: &[1, 2, 3],
        cfl: 0.9,
        final_time: 4.13,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::PvModified,
        name: "pv-modified-1d",
        summary: "p = cos(3 pi t) sin(3 pi x) on [-1, 1], modified scheme, T = 4.13",
        variants: &[MODIFIED, HL, DH],
        orders: &[1, 2, 3],
        cfl: 0.9,
        final_time: 4.13,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::Acoustics,
        name: "acoustics-2d",
        summary: "p = sin(pi x) sin(pi y) cos(sqrt(2) pi t) on the periodic square [-1, 1]^2, T = 4.13",
        variants: &[HL],
        orders: &[0, 1, 2, 3],
        cfl: 0.9,
        final_time: 4.13,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::MaxwellTm,
        name: "maxwell-tm-2d",
        summary: "TM cavity mode with wx = wy = 8 pi in the conducting square [-1, 1]^2, T = 1",
        variants: &[HL],
        orders: &[4],
        cfl: 0.8,
        final_time: 1.0,
        measure: Measure::Convergence,
    },
    Experiment {
        id: ExperimentId::GaussianReflect,
        name: "gaussian-reflect-2d",
        summary: "Gaussian pressure pulse in the reflecting square [-1, 1]^2, stability trace, T = 10",
        variants: &[HL],
        orders: &[0, 2, 3, 4],
        cfl: 0.9,
        final_time: 10.0,
        measure: Measure::Stability,
    },
];

impl Experiment {
    pub fn problem(&self) -> ProblemRef {
        match self.id {
            ExperimentId::StandingWave => ProblemRef::One(&StandingWave),
            ExperimentId::VariableSpeed => ProblemRef::One(&VariableSpeed),
            ExperimentId::AdvectionModified => ProblemRef::One(&Advection),
            ExperimentId::PvModified => ProblemRef::One(&PressureVelocityMode),
            ExperimentId::Acoustics => ProblemRef::Two(&AcousticMode),
            ExperimentId::MaxwellTm => ProblemRef::Two(&MAXWELL),
            ExperimentId::GaussianReflect => ProblemRef::Two(&PULSE),
        }
    }

    pub fn default_variant(&self) -> Variant {
        self.variants[0]
    }

    /// Default resolutions for order `m`. Low orders need finer grids to
    /// reach the asymptotic regime; high orders must stay above the
    /// roundoff floor.
    pub fn default_resolutions(&self, m: usize) -> Vec<usize> {
        match self.id {
            ExperimentId::StandingWave if m <= 1 => vec![40, 80, 160, 320],
            ExperimentId::StandingWave
            | ExperimentId::VariableSpeed
            | ExperimentId::AdvectionModified
            | ExperimentId::PvModified => vec![10, 20, 40, 80],
            ExperimentId::Acoustics => vec![8, 16, 32, 64],
            ExperimentId::MaxwellTm => vec![10, 20, 40],
            ExperimentId::GaussianReflect => vec![40],
        }
    }
}

/// Exact name or unique prefix.
pub fn lookup(name: &str) -> Result<&'static Experiment, HarnessError> {
    if let Some(e) = CATALOG.iter().find(|e| e.name == name) {
        return Ok(e);
    }
    let hits: Vec<&Experiment> = CATALOG.iter().filter(|e| e.name.starts_with(name)).collect();
    match hits.as_slice() {
        [one] if !name.is_empty() => Ok(one),
        _ => Err(HarnessError::UnknownExperiment(name.to_string())),
    }
}

/// One line per experiment: name, variants and summary.
pub fn catalog_text() -> String {
    let mut out = String::new();
    for e in &CATALOG {
        let variants: Vec<&str> = e.variants.iter().map(Variant::name).collect();
        out.push_str(&format!("{:<24}{:<40}{}\n", e.name, variants.join(","), e.summary));
    }
    out
}
