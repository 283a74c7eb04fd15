use alloc::vec;
use alloc::vec::Vec;

use crate::grid::Grid2d;
use crate::interp::InterpOperator;
use crate::jet::evaluate_tensor;
use crate::piecewise::PiecewisePoly;
use crate::problem::{BoundaryMode, Problem1d, Problem2d};
use crate::quadrature::GaussLegendre;
use crate::stepper1d::{GridSide, StaggeredState1d};
use crate::stepper2d::{apply_reflective_bc, StaggeredState2d};
use crate::Result;

/// `sqrt(sum_cells int (f - exact)^2)` with `points` Gauss points per cell.
pub fn l2_error_poly(f: &PiecewisePoly, exact: impl Fn(f64) -> f64, points: usize) -> f64 {
    let q = GaussLegendre::new(points);
    let h = f.h();
    let mut sum = 0.0;
    for j in 0..f.cells() {
        let c = f.center(j);
        let coeffs = f.cell_coeffs(j);
        for (xi, w) in q.nodes.iter().zip(&q.weights) {
            let s = 0.5 * xi;
            let d = crate::jet::horner(coeffs, s) - exact(c + s * h);
            sum += 0.5 * h * w * d * d;
        }
    }
    libm::sqrt(sum)
}

/// L2 error of every field of a 1D state against the exact solution, each
/// at the time it is stored. The Hermite interpolant of the nodal jets is
/// integrated with `2m + 2` Gauss points per cell.
pub fn l2_error(state: &StaggeredState1d, problem: &dyn Problem1d) -> Result<Vec<f64>> {
    let op = InterpOperator::new(state.m)?;
    let points = 2 * state.m + 2;
    let g = &state.grid;
    let mut out = Vec::with_capacity(state.primary.len());
    for f in 0..state.primary.len() {
        let Some((side, jets, t)) = state.field_location(f) else {
            out.push(f64::NAN);
            continue;
        };
        let poly = match side {
            GridSide::Primary => PiecewisePoly::interpolate_primary(&op, g, jets),
            GridSide::Dual => PiecewisePoly::interpolate_dual(&op, g, jets),
        };
        out.push(l2_error_poly(&poly, |x| problem.exact_derivative(f, x, t, 0), points));
    }
    Ok(out)
}

/// L2 errors `[field 0, field 1, field 2]` of a 2D state with `(2m + 2)^2`
/// Gauss points per cell.
///
/// Field 0 is integrated over the whole domain. Dual fields are integrated
/// over the cells centered on primary nodes; with reflective walls only the
/// interior cells are used, which covers the domain minus a half-cell strip.
pub fn l2_error_2d(state: &StaggeredState2d, problem: &dyn Problem2d) -> Result<[f64; 3]> {
    let op = InterpOperator::new(state.m)?;
    let g: &Grid2d = &state.grid;
    let k = state.m + 1;
    let n = op.extended_len();
    let q = GaussLegendre::new(n);
    let mut ext = vec![0.0; n * n];
    let mut scratch = vec![0.0; 2 * n * k];
    let mut out = [0.0; 3];
    let cell_error = |ext: &[f64], cx: f64, cy: f64, f: usize, t: f64| -> f64 {
        let mut s = 0.0;
        for (xi, wx) in q.nodes.iter().zip(&q.weights) {
            for (eta, wy) in q.nodes.iter().zip(&q.weights) {
                let (a, b) = (0.5 * xi, 0.5 * eta);
                let d = evaluate_tensor(ext, n, a, b)
                    - problem.exact_derivative(f, cx + a * g.hx, cy + b * g.hy, t, 0, 0);
                s += 0.25 * wx * wy * d * d;
            }
        }
        s * g.hx * g.hy
    };

    // Field 0: cells centered on dual nodes, corners on primary nodes.
    let (px, py) = state.primary.dims();
    let periodic = g.boundary == BoundaryMode::Periodic;
    let (dx, dy) = g.dual_dims();
    let mut sum = 0.0;
    for i in 0..dx {
        for j in 0..dy {
            let idx = |a: usize, b: usize| if periodic { (a % px, b % py) } else { (a, b) };
            let c = [idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)];
            op.apply_2d(c.map(|(a, b)| state.primary.node(a, b)), &mut ext, &mut scratch);
            let (cx, cy) = g.dual(i as isize, j as isize);
            sum += cell_error(&ext, cx, cy, 0, state.t_primary);
        }
    }
    out[0] = libm::sqrt(sum);

    // Dual fields: cells centered on primary nodes.
    let frame = apply_reflective_bc(state);
    let (lo, hi_x, hi_y) = if periodic { (0, px, py) } else { (1, px - 1, py - 1) };
    for f in 0..2 {
        let mut sum = 0.0;
        for i in lo..hi_x {
            for j in lo..hi_y {
                let (i0, j0) = (i as isize - 1, j as isize - 1);
                let c = [
                    frame.node(f, i0, j0),
                    frame.node(f, i0 + 1, j0),
                    frame.node(f, i0, j0 + 1),
                    frame.node(f, i0 + 1, j0 + 1),
                ];
                op.apply_2d(c, &mut ext, &mut scratch);
                let (cx, cy) = g.primary(i, j);
                sum += cell_error(&ext, cx, cy, f + 1, state.t_dual);
            }
        }
        out[f + 1] = libm::sqrt(sum);
    }
    Ok(out)
}
