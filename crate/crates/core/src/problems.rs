//! Built-in problems with closed-form solutions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math::{binomial, cos_derivative, powi, sin_derivative};
use crate::problem::{BoundaryMode, Problem1d, Problem2d, System1d, System2d, WaveSpeed};

/// `d^n/dx^n sin(w x)`.
fn sin_scaled(w: f64, x: f64, n: usize) -> f64 {
    powi(w, n) * sin_derivative(w * x, n)
}

/// `d^n/dx^n cos(w x)`.
fn cos_scaled(w: f64, x: f64, n: usize) -> f64 {
    powi(w, n) * cos_derivative(w * x, n)
}

/// `p = cos(2 pi t) sin(2 pi x)`, `v = -sin(2 pi t) cos(2 pi x)` on
/// `[-1, 1]` with unit speed.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandingWave;

impl Problem1d for StandingWave {
    fn system(&self) -> System1d {
        System1d::PressureVelocity
    }

    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn exact_derivative(&self, field: usize, x: f64, t: f64, order: usize) -> f64 {
        let w = 2.0 * PI;
        match field {
            0 => libm::cos(w * t) * sin_scaled(w, x, order),
            _ => -libm::sin(w * t) * cos_scaled(w, x, order),
        }
    }
}

/// `p = v = sin(x - t)` with `c^2 = 1 + sin(x)/2` on `[0, 2 pi]`, driven by
/// `z = sin(x) cos(x - t) / 2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct VariableSpeed;

impl Problem1d for VariableSpeed {
    fn system(&self) -> System1d {
        System1d::PressureVelocity
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, 2.0 * PI)
    }

    fn exact_derivative(&self, _field: usize, x: f64, t: f64, order: usize) -> f64 {
        sin_derivative(x - t, order)
    }

    fn wave_speed(&self) -> WaveSpeed {
        WaveSpeed::Variable {
            c_max: libm::sqrt(1.5),
        }
    }

    fn c2_derivative(&self, x: f64, order: usize) -> f64 {
        if order == 0 {
            1.0 + 0.5 * libm::sin(x)
        } else {
            0.5 * sin_derivative(x, order)
        }
    }

    fn has_forcing(&self) -> bool {
        true
    }

    fn forcing_derivative(&self, x: f64, t: f64, space: usize, time: usize) -> f64 {
        let sign = if time % 2 == 0 { 1.0 } else { -1.0 };
        let mut acc = 0.0;
        for a in 0..=space {
            acc += binomial(space, a)
                * sin_derivative(x, a)
                * cos_derivative(x - t, space - a + time);
        }
        0.5 * sign * acc
    }
}

/// `u = sin(3 pi (x - t))` for `u_t + u_x = 0` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Advection;

impl Problem1d for Advection {
    fn system(&self) -> System1d {
        System1d::Advection { speed: 1.0 }
    }

    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn exact_derivative(&self, _field: usize, x: f64, t: f64, order: usize) -> f64 {
        let w = 3.0 * PI;
        powi(w, order) * sin_derivative(w * (x - t), order)
    }
}

/// `p = cos(3 pi t) sin(3 pi x)`, `v = -sin(3 pi t) cos(3 pi x)` on
/// `[-1, 1]` with unit speed.
#[derive(Debug, Clone, Copy, Default)]
pub struct PressureVelocityMode;

impl Problem1d for PressureVelocityMode {
    fn system(&self) -> System1d {
        System1d::PressureVelocity
    }

    fn domain(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn exact_derivative(&self, field: usize, x: f64, t: f64, order: usize) -> f64 {
        let w = 3.0 * PI;
        match field {
            0 => libm::cos(w * t) * sin_scaled(w, x, order),
            _ => -libm::sin(w * t) * cos_scaled(w, x, order),
        }
    }
}

/// One Fourier mode of [`TravelingWaves`]: `a cos(k x') + b sin(k x')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub wavenumber: usize,
    pub a: f64,
    pub b: f64,
}

/// Unit-speed solution `p = F(x - t) + G(x + t)`, `v = F(x - t) - G(x + t)`
/// with trigonometric polynomials `F`, `G` periodic on the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct TravelingWaves {
    pub domain: (f64, f64),
    pub right: Vec<Mode>,
    pub left: Vec<Mode>,
}

impl TravelingWaves {
    fn series(&self, modes: &[Mode], y: f64, order: usize) -> f64 {
        let base = 2.0 * PI / (self.domain.1 - self.domain.0);
        modes
            .iter()
            .map(|md| {
                let w = base * md.wavenumber as f64;
                md.a * cos_scaled(w, y, order) + md.b * sin_scaled(w, y, order)
            })
            .sum()
    }
}

impl Problem1d for TravelingWaves {
    fn system(&self) -> System1d {
        System1d::PressureVelocity
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn exact_derivative(&self, field: usize, x: f64, t: f64, order: usize) -> f64 {
        let f = self.series(&self.right, x - t, order);
        let g = self.series(&self.left, x + t, order);
        if field == 0 {
            f + g
        } else {
            f - g
        }
    }
}

/// `p = sin(pi x) sin(pi y) cos(w t)` with `w = sqrt(2) pi` for the unit
/// speed acoustic system on the periodic square `[-1, 1]^2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AcousticMode;

impl AcousticMode {
    pub const OMEGA: f64 = core::f64::consts::SQRT_2 * PI;
}

impl Problem2d for AcousticMode {
    fn system(&self) -> System2d {
        System2d::Acoustic
    }

    fn x_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn y_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn boundary(&self) -> BoundaryMode {
        BoundaryMode::Periodic
    }

    fn exact_derivative(&self, field: usize, x: f64, y: f64, t: f64, dx: usize, dy: usize) -> f64 {
        let w = Self::OMEGA;
        let amp = -PI / w * libm::sin(w * t);
        match field {
            0 => libm::cos(w * t) * sin_scaled(PI, x, dx) * sin_scaled(PI, y, dy),
            1 => amp * cos_scaled(PI, x, dx) * sin_scaled(PI, y, dy),
            _ => amp * sin_scaled(PI, x, dx) * cos_scaled(PI, y, dy),
        }
    }
}

/// TM cavity mode on `[-1, 1]^2` with perfectly conducting walls:
/// `Ez = sin(wx x) sin(wy y) cos(wt t)`,
/// `Hx = -(wy / wt) sin(wx x) cos(wy y) sin(wt t)`,
/// `Hy = (wx / wt) cos(wx x) sin(wy y) sin(wt t)`.
#[derive(Debug, Clone, Copy)]
pub struct MaxwellCavity {
    pub wx: f64,
    pub wy: f64,
}

impl Default for MaxwellCavity {
    fn default() -> Self {
        MaxwellCavity {
            wx: 8.0 * PI,
            wy: 8.0 * PI,
        }
    }
}

impl MaxwellCavity {
    pub fn omega(&self) -> f64 {
        libm::sqrt(self.wx * self.wx + self.wy * self.wy)
    }
}

impl Problem2d for MaxwellCavity {
    fn system(&self) -> System2d {
        System2d::MaxwellTm
    }

    fn x_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn y_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn boundary(&self) -> BoundaryMode {
        BoundaryMode::Reflective
    }

    fn exact_derivative(&self, field: usize, x: f64, y: f64, t: f64, dx: usize, dy: usize) -> f64 {
        let wt = self.omega();
        let (wx, wy) = (self.wx, self.wy);
        match field {
            0 => libm::cos(wt * t) * sin_scaled(wx, x, dx) * sin_scaled(wy, y, dy),
            1 => -wy / wt * libm::sin(wt * t) * sin_scaled(wx, x, dx) * cos_scaled(wy, y, dy),
            _ => wx / wt * libm::sin(wt * t) * cos_scaled(wx, x, dx) * sin_scaled(wy, y, dy),
        }
    }
}

/// Gaussian pressure pulse `exp(-((x - 0.3)^2 + (y - 0.3)^2) / 0.002)` at
/// rest inside the reflecting square `[-1, 1]^2`. Only initial data are
/// known.
#[derive(Debug, Clone, Copy)]
pub struct GaussianPulse {
    pub center: (f64, f64),
    pub width: f64,
}

impl Default for GaussianPulse {
    fn default() -> Self {
        GaussianPulse {
            center: (0.3, 0.3),
            width: 0.002,
        }
    }
}

/// `d^n/dx^n exp(-(x - c)^2 / s)` through Hermite polynomials.
fn gaussian_derivative(x: f64, c: f64, s: f64, n: usize) -> f64 {
    let r = libm::sqrt(s);
    let z = (x - c) / r;
    let (mut h0, mut h1) = (1.0, 2.0 * z);
    let hn = match n {
        0 => h0,
        _ => {
            for k in 1..n {
                let h2 = 2.0 * z * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * hn * libm::exp(-z * z) / powi(r, n)
}

impl Problem2d for GaussianPulse {
    fn system(&self) -> System2d {
        System2d::Acoustic
    }

    fn x_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn y_range(&self) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn boundary(&self) -> BoundaryMode {
        BoundaryMode::Reflective
    }

    fn exact_derivative(&self, field: usize, x: f64, y: f64, _t: f64, dx: usize, dy: usize) -> f64 {
        if field != 0 {
            return 0.0;
        }
        gaussian_derivative(x, self.center.0, self.width, dx)
            * gaussian_derivative(y, self.center.1, self.width, dy)
    }

    fn has_exact_solution(&self) -> bool {
        false
    }
}
