//! Problem descriptions and scheme configuration.

use alloc::format;
use alloc::vec::Vec;

use crate::grid::Grid1d;
use crate::jet::Jet;
use crate::{Error, Result, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    Periodic,
    /// Mirror ghosts on walls that coincide with primary grid lines.
    Reflective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Odd-power leapfrog update on a staggered pair of grids.
    HermiteLeapfrog,
    /// Difference form for even-order coefficients, sum form for odd-order
    /// ones; carries every field on both grids.
    Modified,
    /// Classic Hermite method: full Taylor update, primary to dual and back.
    DualHermite,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::HermiteLeapfrog => "hermite-leapfrog",
            Variant::Modified => "modified",
            Variant::DualHermite => "dual-hermite",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hermite-leapfrog" | "leapfrog" | "hl" => Some(Variant::HermiteLeapfrog),
            "modified" => Some(Variant::Modified),
            "dual-hermite" | "dual" | "classic" => Some(Variant::DualHermite),
            _ => None,
        }
    }
}

/// One-dimensional first-order systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum System1d {
    /// `p_t = -c^2(x) v_x + z(x, t)`, `v_t = -p_x`. Fields: `[p, v]`.
    PressureVelocity,
    /// `u_t + a u_x = 0`. Field: `[u]`.
    Advection { speed: f64 },
}

impl System1d {
    pub fn field_count(&self) -> usize {
        match self {
            System1d::PressureVelocity => 2,
            System1d::Advection { .. } => 1,
        }
    }

    pub fn field_name(&self, field: usize) -> &'static str {
        match (self, field) {
            (System1d::PressureVelocity, 0) => "p",
            (System1d::PressureVelocity, _) => "v",
            (System1d::Advection { .. }, _) => "u",
        }
    }
}

/// Two-dimensional systems. Field 0 lives on the primary grid, fields 1 and
/// 2 on the dual grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System2d {
    /// `p_t = -(v_x + u_y)`, `v_t = -p_x`, `u_t = -p_y`. Fields `[p, v, u]`.
    Acoustic,
    /// `Ez_t = Hy_x - Hx_y`, `Hx_t = -Ez_y`, `Hy_t = Ez_x`. Fields `[Ez, Hx, Hy]`.
    MaxwellTm,
}

impl System2d {
    pub fn field_name(&self, field: usize) -> &'static str {
        const ACOUSTIC: [&str; 3] = ["p", "v", "u"];
        const MAXWELL: [&str; 3] = ["Ez", "Hx", "Hy"];
        match self {
            System2d::Acoustic => ACOUSTIC[field],
            System2d::MaxwellTm => MAXWELL[field],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveSpeed {
    Constant(f64),
    /// Smooth `c^2(x)` supplied through [`Problem1d::c2_derivative`].
    Variable { c_max: f64 },
}

impl WaveSpeed {
    pub fn c_max(&self) -> f64 {
        match *self {
            WaveSpeed::Constant(c) => c.abs(),
            WaveSpeed::Variable { c_max } => c_max,
        }
    }
}

/// Analytic description of a 1D experiment.
///
/// Providers return raw derivatives; jets are assembled by the caller.
pub trait Problem1d: Sync {
    fn system(&self) -> System1d;

    fn domain(&self) -> (f64, f64);

    /// `d^order/dx^order` of field `field` at `(x, t)`.
    fn exact_derivative(&self, field: usize, x: f64, t: f64, order: usize) -> f64;

    fn wave_speed(&self) -> WaveSpeed {
        match self.system() {
            System1d::Advection { speed } => WaveSpeed::Constant(speed),
            System1d::PressureVelocity => WaveSpeed::Constant(1.0),
        }
    }

    /// `d^order/dx^order c^2(x)`; only consulted for variable speed.
    fn c2_derivative(&self, _x: f64, order: usize) -> f64 {
        match self.wave_speed() {
            WaveSpeed::Constant(c) if order == 0 => c * c,
            _ => 0.0,
        }
    }

    fn has_forcing(&self) -> bool {
        false
    }

    /// `d^space/dx^space d^time/dt^time z(x, t)`.
    fn forcing_derivative(&self, _x: f64, _t: f64, _space: usize, _time: usize) -> f64 {
        0.0
    }
}

/// Analytic description of a 2D experiment.
pub trait Problem2d: Sync {
    fn system(&self) -> System2d;

    fn x_range(&self) -> (f64, f64);

    fn y_range(&self) -> (f64, f64);

    fn boundary(&self) -> BoundaryMode;

    /// `d^{dx + dy} / dx^dx dy^dy` of field `field` at `(x, y, t)`.
    fn exact_derivative(&self, field: usize, x: f64, y: f64, t: f64, dx: usize, dy: usize) -> f64;

    /// Whether [`exact_derivative`](Self::exact_derivative) is valid for
    /// `t > 0` (a pulse problem only knows its initial data).
    fn has_exact_solution(&self) -> bool {
        true
    }
}

/// Scaled jet of length `len` for a 1D problem field.
pub fn exact_jet(
    problem: &dyn Problem1d,
    field: usize,
    x: f64,
    t: f64,
    h: f64,
    len: usize,
) -> Jet {
    let derivs: Vec<f64> = (0..len)
        .map(|i| problem.exact_derivative(field, x, t, i))
        .collect();
    Jet::from_derivatives(&derivs, h)
}

/// Scaled spatial jet of `d^time z / dt^time` at `(x, t)`.
pub fn forcing_jet(
    problem: &dyn Problem1d,
    x: f64,
    t: f64,
    time_order: usize,
    h: f64,
    len: usize,
) -> Jet {
    let derivs: Vec<f64> = (0..len)
        .map(|i| problem.forcing_derivative(x, t, i, time_order))
        .collect();
    Jet::from_derivatives(&derivs, h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub m: usize,
    pub cfl: f64,
    pub variant: Variant,
}

impl SchemeConfig {
    pub fn new(m: usize, cfl: f64, variant: Variant) -> Result<Self> {
        if m > MAX_ORDER {
            return Err(Error::OrderTooLarge(m));
        }
        if !(cfl > 0.0 && cfl < 1.0) {
            return Err(Error::Config(format!("CFL constant must lie in (0, 1), got {cfl}")));
        }
        Ok(SchemeConfig { m, cfl, variant })
    }

    /// `dt = 2 C_CFL (h / 2) / c_max`, where `h` is the node spacing of one
    /// grid, so `h / 2` is the distance from a node to the nearest node of
    /// the other grid and the half-step travel `c dt / 2` stays inside the
    /// reconstruction cell.
    pub fn time_step(&self, spacing: f64, c_max: f64) -> f64 {
        2.0 * self.cfl * (0.5 * spacing) / c_max
    }

    pub fn jet_len(&self) -> usize {
        self.m + 1
    }

    pub fn extended_len(&self) -> usize {
        2 * self.m + 2
    }
}

/// Wave speed prepared for stepping on a particular grid.
#[derive(Debug, Clone, PartialEq)]
pub enum SpeedModel {
    Constant { c: f64 },
    /// Extended scaled jets of `c^2(x)` at every primary and dual node.
    Smooth {
        primary: Vec<Jet>,
        dual: Vec<Jet>,
        c_max: f64,
    },
}

impl SpeedModel {
    pub fn for_grid(problem: &dyn Problem1d, grid: &Grid1d, m: usize) -> Self {
        match problem.wave_speed() {
            WaveSpeed::Constant(c) => SpeedModel::Constant { c },
            WaveSpeed::Variable { c_max } => {
                let len = 2 * m + 2;
                let jet_at = |x: f64| {
                    let d: Vec<f64> = (0..len).map(|i| problem.c2_derivative(x, i)).collect();
                    Jet::from_derivatives(&d, grid.h)
                };
                SpeedModel::Smooth {
                    primary: (0..grid.k).map(|j| jet_at(grid.primary(j))).collect(),
                    dual: (0..grid.k).map(|j| jet_at(grid.dual(j))).collect(),
                    c_max,
                }
            }
        }
    }

    pub fn c_max(&self) -> f64 {
        match self {
            SpeedModel::Constant { c } => c.abs(),
            SpeedModel::Smooth { c_max, .. } => *c_max,
        }
    }
}
