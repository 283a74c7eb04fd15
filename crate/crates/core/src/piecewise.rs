//! Periodic piecewise polynomials on uniform cells.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::Grid1d;
use crate::interp::InterpOperator;
use crate::jet::horner;
use crate::math::{falling, powi};
use crate::stepper1d::JetArray;

/// Uniform cells of width `h` centered at `first_center + j h`, each carrying
/// scaled coefficients in `(x - center) / h`. The cells tile a periodic
/// domain of length `cells * h`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    first_center: f64,
    h: f64,
    len: usize,
    coeffs: Vec<f64>,
}

impl PiecewisePoly {
    pub fn new(first_center: f64, h: f64, len: usize, coeffs: Vec<f64>) -> Self {
        assert!(len > 0 && coeffs.len() % len == 0);
        PiecewisePoly {
            first_center,
            h,
            len,
            coeffs,
        }
    }

    /// Nodal Taylor polynomials: cell `j` is centered on node `j`.
    pub fn from_nodal(first_node: f64, h: f64, jets: &JetArray) -> Self {
        PiecewisePoly::new(first_node, h, jets.jet_len(), jets.as_slice().to_vec())
    }

    /// Global Hermite interpolant of periodic nodal jets whose first node is
    /// at `first_node`: cell `j` spans nodes `j` and `j + 1`.
    pub fn hermite_interpolant(op: &InterpOperator, first_node: f64, h: f64, jets: &JetArray) -> Self {
        let k = jets.nodes();
        let n = op.extended_len();
        let mut coeffs = vec![0.0; k * n];
        for j in 0..k {
            op.apply(
                jets.node(j),
                jets.node((j + 1) % k),
                &mut coeffs[j * n..(j + 1) * n],
            );
        }
        PiecewisePoly::new(first_node + 0.5 * h, h, n, coeffs)
    }

    /// Interpolant of primary-grid jets on a 1D grid.
    pub fn interpolate_primary(op: &InterpOperator, grid: &Grid1d, jets: &JetArray) -> Self {
        Self::hermite_interpolant(op, grid.primary(0), grid.h, jets)
    }

    /// Interpolant of dual-grid jets on a 1D grid.
    pub fn interpolate_dual(op: &InterpOperator, grid: &Grid1d, jets: &JetArray) -> Self {
        Self::hermite_interpolant(op, grid.dual(0), grid.h, jets)
    }

    pub fn cells(&self) -> usize {
        self.coeffs.len() / self.len
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn coeff_len(&self) -> usize {
        self.len
    }

    pub fn period(&self) -> f64 {
        self.h * self.cells() as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.first_center + j as f64 * self.h
    }

    pub fn cell_coeffs(&self, j: usize) -> &[f64] {
        &self.coeffs[j * self.len..(j + 1) * self.len]
    }

    /// Left cell edges, sorted, inside `[start, start + period)`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let start = self.first_center - 0.5 * self.h;
        (0..self.cells())
            .map(|j| start + j as f64 * self.h)
            .collect()
    }

    /// Cell index and normalized offset for `x`, wrapping periodically.
    pub fn locate(&self, x: f64) -> (usize, f64) {
        let k = self.cells();
        let start = self.first_center - 0.5 * self.h;
        let s = (x - start) / self.h;
        let fl = libm::floor(s);
        let j = (fl as i64).rem_euclid(k as i64) as usize;
        (j, s - fl - 0.5)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let (j, xi) = self.locate(x);
        horner(self.cell_coeffs(j), xi)
    }

    /// `d^order / dx^order` at `x`.
    pub fn derivative(&self, x: f64, order: usize) -> f64 {
        let (j, xi) = self.locate(x);
        self.cell_derivative(j, xi, order)
    }

    /// Derivative evaluated in a given cell at normalized offset `xi`, which
    /// may lie outside `[-1/2, 1/2]`.
    pub fn cell_derivative(&self, j: usize, xi: f64, order: usize) -> f64 {
        let c = self.cell_coeffs(j);
        let mut acc = 0.0;
        for i in (order..c.len()).rev() {
            acc = acc * xi + falling(i, order) * c[i];
        }
        acc / powi(self.h, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_node_is_zeroth_coefficient() {
        let mut jets = JetArray::zeros(4, 3);
        for j in 0..4 {
            jets.node_mut(j).copy_from_slice(&[j as f64, 0.5, -0.25]);
        }
        let p = PiecewisePoly::from_nodal(0.0, 0.5, &jets);
        for j in 0..4 {
            assert_eq!(p.evaluate(0.5 * j as f64), j as f64);
        }
        // Periodic wrap.
        assert_eq!(p.evaluate(2.0), 0.0);
        assert_eq!(p.evaluate(-0.5), 3.0);
    }
}
