//! Uniform primary and dual grids.

use alloc::format;

use crate::problem::BoundaryMode;
use crate::{Error, Result};

/// Periodic 1D grid: primary nodes `x_min + j h` and dual nodes
/// `x_min + (j + 1/2) h` for `j = 0..k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1d {
    pub x_min: f64,
    pub h: f64,
    pub k: usize,
}

impl Grid1d {
    pub fn new(x_min: f64, h: f64, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Config(format!("grid needs at least 2 nodes, got {k}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Config(format!("grid spacing must be positive, got {h}")));
        }
        Ok(Grid1d { x_min, h, k })
    }

    /// `k` cells tiling the periodic interval `[x_min, x_max)`.
    pub fn periodic(x_min: f64, x_max: f64, k: usize) -> Result<Self> {
        Grid1d::new(x_min, (x_max - x_min) / k as f64, k)
    }

    pub fn primary(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.h
    }

    pub fn dual(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.h
    }

    pub fn length(&self) -> f64 {
        self.h * self.k as f64
    }
}

/// Tensor-product 2D grid.
///
/// Periodic: `kx * ky` primary and dual nodes. Reflective: walls sit on the
/// first and last primary lines, so there are `(kx + 1) * (ky + 1)` primary
/// nodes and `kx * ky` dual nodes strictly inside the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2d {
    pub x_min: f64,
    pub y_min: f64,
    pub hx: f64,
    pub hy: f64,
    pub kx: usize,
    pub ky: usize,
    pub boundary: BoundaryMode,
}

impl Grid2d {
    pub fn new(
        x_range: (f64, f64),
        y_range: (f64, f64),
        kx: usize,
        ky: usize,
        boundary: BoundaryMode,
    ) -> Result<Self> {
        if kx < 2 || ky < 2 {
            return Err(Error::Config(format!(
                "grid needs at least 2 cells per direction, got {kx} x {ky}"
            )));
        }
        let hx = (x_range.1 - x_range.0) / kx as f64;
        let hy = (y_range.1 - y_range.0) / ky as f64;
        if !(hx > 0.0 && hy > 0.0) {
            return Err(Error::Config(format!(
                "empty domain [{}, {}] x [{}, {}]",
                x_range.0, x_range.1, y_range.0, y_range.1
            )));
        }
        Ok(Grid2d {
            x_min: x_range.0,
            y_min: y_range.0,
            hx,
            hy,
            kx,
            ky,
            boundary,
        })
    }

    pub fn primary_dims(&self) -> (usize, usize) {
        match self.boundary {
            BoundaryMode::Periodic => (self.kx, self.ky),
            BoundaryMode::Reflective => (self.kx + 1, self.ky + 1),
        }
    }

    pub fn dual_dims(&self) -> (usize, usize) {
        (self.kx, self.ky)
    }

    pub fn primary(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x_min + i as f64 * self.hx,
            self.y_min + j as f64 * self.hy,
        )
    }

    /// Position of dual node `(i, j)`; negative or past-the-end indices give
    /// ghost positions.
    pub fn dual(&self, i: isize, j: isize) -> (f64, f64) {
        (
            self.x_min + (i as f64 + 0.5) * self.hx,
            self.y_min + (j as f64 + 0.5) * self.hy,
        )
    }

    pub fn x_max(&self) -> f64 {
        self.x_min + self.kx as f64 * self.hx
    }

    pub fn y_max(&self) -> f64 {
        self.y_min + self.ky as f64 * self.hy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_nodes_sit_half_a_cell_right() {
        let g = Grid1d::periodic(-1.0, 1.0, 10).unwrap();
        for j in 0..10 {
            assert!((g.dual(j) - g.primary(j) - 0.5 * g.h).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid1d::new(0.0, 0.1, 1).is_err());
        assert!(Grid1d::new(0.0, -0.1, 4).is_err());
        assert!(Grid2d::new((0.0, 1.0), (0.0, 1.0), 1, 4, BoundaryMode::Periodic).is_err());
    }

    #[test]
    fn reflective_grid_has_wall_nodes() {
        let g = Grid2d::new((-1.0, 1.0), (-1.0, 1.0), 8, 8, BoundaryMode::Reflective).unwrap();
        assert_eq!(g.primary_dims(), (9, 9));
        assert_eq!(g.primary(8, 8), (1.0, 1.0));
        assert_eq!(g.dual(-1, 0).0, -1.0 - 0.5 * g.hx);
    }
}
