//! Hermite-leapfrog time stepping for first-order wave systems.
//!
//! Field values are carried as *jets*: scaled Taylor coefficients
//! `h^i / i! * d^i u / dx^i` at the nodes of a primary grid and a dual grid
//! offset by half a cell. Each half step reconstructs a degree `2m + 1`
//! Hermite-Birkhoff interpolant from the other grid, exchanges time
//! derivatives for space derivatives through the Cauchy-Kowalevsky
//! recurrence, and advances the target jets with a leapfrog update.
//!
//! The crate is `no_std` (it needs `alloc`). IO, experiment sweeps and the
//! command line live in the companion `hermite-lf-harness` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod grid;
pub mod interp;
pub mod jet;
pub mod linalg;
mod math;
pub mod piecewise;
pub mod problem;
pub mod problems;
pub mod quadrature;
pub mod stepper1d;
pub mod stepper2d;

pub use crate::error::{Error, Result};
pub use crate::grid::{Grid1d, Grid2d};
pub use crate::interp::InterpOperator;
pub use crate::jet::{jet_differentiate, jet_multiply, Jet, TensorJet};
pub use crate::piecewise::PiecewisePoly;
pub use crate::problem::{
    BoundaryMode, Problem1d, Problem2d, SchemeConfig, SpeedModel, System1d, System2d, Variant,
    WaveSpeed,
};
pub use crate::stepper1d::StaggeredState1d;
pub use crate::stepper2d::StaggeredState2d;

/// Largest supported order `m`. Factorials up to `(2m + 1)!` and the
/// reconstruction matrix stay well conditioned in double precision.
pub const MAX_ORDER: usize = 8;
