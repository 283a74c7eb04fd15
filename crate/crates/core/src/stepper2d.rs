//! Tensor-product staggered stepping for 2D acoustics and TM Maxwell.
//!
//! Field 0 (`p` or `Ez`) lives on the primary grid at integer times; fields
//! 1 and 2 (`v, u` or `Hx, Hy`) live on the dual grid at half times.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::Grid2d;
use crate::interp::InterpOperator;
use crate::jet::{tensor_dx, tensor_dy, TensorJet};
use crate::math::{factorial, powi, wrap};
use crate::problem::{BoundaryMode, Problem2d, SchemeConfig, System2d, Variant};
use crate::{Error, Result};

/// Square tensor jets of side `side`, one per node of an `nx x ny` grid,
/// stored with `x` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorArray {
    nx: usize,
    ny: usize,
    side: usize,
    data: Vec<f64>,
}

impl TensorArray {
    pub fn zeros(nx: usize, ny: usize, side: usize) -> Self {
        TensorArray {
            nx,
            ny,
            side,
            data: vec![0.0; nx * ny * side * side],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn node(&self, i: usize, j: usize) -> &[f64] {
        let s = self.side * self.side;
        let k = (i * self.ny + j) * s;
        &self.data[k..k + s]
    }

    pub fn node_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let s = self.side * self.side;
        let k = (i * self.ny + j) * s;
        &mut self.data[k..k + s]
    }

    pub fn jet(&self, i: usize, j: usize) -> TensorJet {
        TensorJet::from_coeffs(self.side, self.node(i, j).to_vec()).expect("side matches")
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Nodal data of a 2D system.
#[derive(Debug, Clone, PartialEq)]
pub struct StaggeredState2d {
    pub grid: Grid2d,
    pub m: usize,
    pub system: System2d,
    pub primary: TensorArray,
    pub dual: [TensorArray; 2],
    pub t_primary: f64,
    pub t_dual: f64,
    pub steps: usize,
}

impl StaggeredState2d {
    pub fn zeros(grid: Grid2d, m: usize, system: System2d) -> Self {
        let (px, py) = grid.primary_dims();
        let (dx, dy) = grid.dual_dims();
        StaggeredState2d {
            grid,
            m,
            system,
            primary: TensorArray::zeros(px, py, m + 1),
            dual: [
                TensorArray::zeros(dx, dy, m + 1),
                TensorArray::zeros(dx, dy, m + 1),
            ],
            t_primary: 0.0,
            t_dual: 0.0,
            steps: 0,
        }
    }

    pub fn field(&self, f: usize) -> &TensorArray {
        match f {
            0 => &self.primary,
            _ => &self.dual[f - 1],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.primary.is_finite() && self.dual.iter().all(TensorArray::is_finite)
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mix = |x: &TensorArray, y: &TensorArray| TensorArray {
            data: x
                .data
                .iter()
                .zip(&y.data)
                .map(|(p, q)| a * p + b * q)
                .collect(),
            ..x.clone()
        };
        StaggeredState2d {
            primary: mix(&self.primary, &other.primary),
            dual: [
                mix(&self.dual[0], &other.dual[0]),
                mix(&self.dual[1], &other.dual[1]),
            ],
            ..self.clone()
        }
    }

    /// Values of field 0 at the primary nodes as `(x, y, value)`, one row per y with x increasing.
    pub fn snapshot(&self) -> Vec<(f64, f64, f64)> {
        let (nx, ny) = self.primary.dims();
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = self.grid.primary(i, j);
                out.push((x, y, self.primary.node(i, j)[0]));
            }
        }
        out
    }

    /// Sum of squared nodal values of every field times the cell area; a
    /// cheap boundedness probe.
    pub fn nodal_energy(&self) -> f64 {
        let side2 = (self.m + 1) * (self.m + 1);
        let sum = |a: &TensorArray| -> f64 {
            a.data.chunks(side2).map(|c| c[0] * c[0]).sum()
        };
        (sum(&self.primary) + sum(&self.dual[0]) + sum(&self.dual[1])) * self.grid.hx * self.grid.hy
    }
}

/// Scaled tensor jet of side `len` for field `f` at `(x, y, t)`.
pub fn exact_tensor_jet(
    problem: &dyn Problem2d,
    f: usize,
    (x, y): (f64, f64),
    t: f64,
    (hx, hy): (f64, f64),
    len: usize,
) -> Vec<f64> {
    let mut out = vec![0.0; len * len];
    for a in 0..len {
        let sx = powi(hx, a) / factorial(a);
        for b in 0..len {
            let sy = powi(hy, b) / factorial(b);
            out[a * len + b] = sx * sy * problem.exact_derivative(f, x, y, t, a, b);
        }
    }
    out
}

/// Exact data: field 0 at `t0`, dual fields at `t0 + dt/2`.
pub fn initialize_state_2d(
    problem: &dyn Problem2d,
    grid: Grid2d,
    m: usize,
    t0: f64,
    dt: f64,
) -> StaggeredState2d {
    let mut state = StaggeredState2d::zeros(grid, m, problem.system());
    let len = m + 1;
    let hs = (grid.hx, grid.hy);
    let (px, py) = grid.primary_dims();
    for i in 0..px {
        for j in 0..py {
            let jet = exact_tensor_jet(problem, 0, grid.primary(i, j), t0, hs, len);
            state.primary.node_mut(i, j).copy_from_slice(&jet);
        }
    }
    let t_dual = t0 + 0.5 * dt;
    let (dx, dy) = grid.dual_dims();
    for (f, arr) in state.dual.iter_mut().enumerate() {
        for i in 0..dx {
            for j in 0..dy {
                let pos = grid.dual(i as isize, j as isize);
                let jet = exact_tensor_jet(problem, f + 1, pos, t_dual, hs, len);
                arr.node_mut(i, j).copy_from_slice(&jet);
            }
        }
    }
    state.t_primary = t0;
    state.t_dual = t_dual;
    state
}

/// Time-derivative tables for the three fields at one node. Entry `r` of
/// field `f` sits at `((r * 3) + f) * n * n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CkTable2d {
    n: usize,
    levels: usize,
    data: Vec<f64>,
}

impl CkTable2d {
    pub fn zeros(levels: usize, n: usize) -> Self {
        CkTable2d {
            n,
            levels,
            data: vec![0.0; levels * 3 * n * n],
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn entry(&self, r: usize, f: usize) -> &[f64] {
        let s = self.n * self.n;
        let k = (r * 3 + f) * s;
        &self.data[k..k + s]
    }
}

/// Iterates the first-order system on extended tensor jets of the three
/// fields, filling every level of `table`.
pub fn ck_recurrence_2d(
    system: System2d,
    fields: [&[f64]; 3],
    (hx, hy): (f64, f64),
    table: &mut CkTable2d,
    scratch: &mut [f64],
) {
    let n = table.n;
    let s = n * n;
    for (f, src) in fields.iter().enumerate() {
        table.data[f * s..(f + 1) * s].copy_from_slice(src);
    }
    let (d1, d2) = scratch[..2 * s].split_at_mut(s);
    for r in 0..table.levels - 1 {
        let base = r * 3 * s;
        let (cur, next) = table.data.split_at_mut(base + 3 * s);
        let cur = &cur[base..];
        let next = &mut next[..3 * s];
        let (f0, rest) = cur.split_at(s);
        let (f1, f2) = rest.split_at(s);
        let (n0, nrest) = next.split_at_mut(s);
        let (n1, n2) = nrest.split_at_mut(s);
        match system {
            System2d::Acoustic => {
                // p_t = -(v_x + u_y), v_t = -p_x, u_t = -p_y
                tensor_dx(f1, n, hx, d1);
                tensor_dy(f2, n, hy, d2);
                for k in 0..s {
                    n0[k] = -(d1[k] + d2[k]);
                }
                tensor_dx(f0, n, hx, d1);
                tensor_dy(f0, n, hy, d2);
                for k in 0..s {
                    n1[k] = -d1[k];
                    n2[k] = -d2[k];
                }
            }
            System2d::MaxwellTm => {
                // Ez_t = Hy_x - Hx_y, Hx_t = -Ez_y, Hy_t = Ez_x
                tensor_dx(f2, n, hx, d1);
                tensor_dy(f1, n, hy, d2);
                for k in 0..s {
                    n0[k] = d1[k] - d2[k];
                }
                tensor_dx(f0, n, hx, d1);
                tensor_dy(f0, n, hy, d2);
                for k in 0..s {
                    n1[k] = -d2[k];
                    n2[k] = d1[k];
                }
            }
        }
    }
}

/// Ghost parities `(sigma_x, sigma_y)` of the dual fields across walls
/// normal to x and to y. The primary field vanishes on every wall, so its
/// x-derivative is even across x-walls and its y-derivative odd.
pub fn ghost_parity(system: System2d, f: usize) -> (f64, f64) {
    match (system, f) {
        // v ~ -p_x, u ~ -p_y
        (System2d::Acoustic, 1) => (1.0, -1.0),
        (System2d::Acoustic, _) => (-1.0, 1.0),
        // Hx ~ -Ez_y, Hy ~ Ez_x
        (System2d::MaxwellTm, 1) => (-1.0, 1.0),
        (System2d::MaxwellTm, _) => (1.0, -1.0),
    }
}

/// Dual fields padded with one ring of ghost jets. In periodic mode the ring
/// wraps; in reflective mode it mirrors across the walls.
#[derive(Debug, Clone, PartialEq)]
pub struct GhostFrame {
    pub fields: [TensorArray; 2],
}

impl GhostFrame {
    pub fn node(&self, f: usize, i: isize, j: isize) -> &[f64] {
        self.fields[f].node((i + 1) as usize, (j + 1) as usize)
    }
}

/// Builds the padded dual arrays for the current state.
pub fn apply_reflective_bc(state: &StaggeredState2d) -> GhostFrame {
    let (kx, ky) = state.grid.dual_dims();
    let side = state.m + 1;
    let reflective = state.grid.boundary == BoundaryMode::Reflective;
    let fields = [0, 1].map(|f| {
        let src = &state.dual[f];
        let (sx, sy) = ghost_parity(state.system, f + 1);
        let mut out = TensorArray::zeros(kx + 2, ky + 2, side);
        for pi in 0..kx + 2 {
            for pj in 0..ky + 2 {
                let i = pi as isize - 1;
                let j = pj as isize - 1;
                if !reflective {
                    let (si, sj) = (wrap(i, kx), wrap(j, ky));
                    out.node_mut(pi, pj).copy_from_slice(src.node(si, sj));
                    continue;
                }
                let (si, fx) = mirror_index(i, kx);
                let (sj, fy) = mirror_index(j, ky);
                let from = src.node(si, sj);
                let to = out.node_mut(pi, pj);
                for a in 0..side {
                    let ca = if fx { sx * parity(a) } else { 1.0 };
                    for b in 0..side {
                        let cb = if fy { sy * parity(b) } else { 1.0 };
                        to[a * side + b] = ca * cb * from[a * side + b];
                    }
                }
            }
        }
        out
    });
    GhostFrame { fields }
}

fn parity(a: usize) -> f64 {
    if a % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Interior index mirrored into `0..k`, and whether a mirror happened.
fn mirror_index(i: isize, k: usize) -> (usize, bool) {
    if i < 0 {
        ((-1 - i) as usize, true)
    } else if i as usize >= k {
        (2 * k - 1 - i as usize, true)
    } else {
        (i as usize, false)
    }
}

/// Precomputed data for 2D stepping.
#[derive(Debug, Clone)]
pub struct Stepper2d {
    pub config: SchemeConfig,
    pub dt: f64,
    op: InterpOperator,
    grid: Grid2d,
    system: System2d,
}

struct Workspace {
    ext: [Vec<f64>; 3],
    table: CkTable2d,
    scratch: Vec<f64>,
    weights: Vec<f64>,
}

impl Stepper2d {
    pub fn new(problem: &dyn Problem2d, grid: Grid2d, config: SchemeConfig, dt: f64) -> Result<Self> {
        if config.variant != Variant::HermiteLeapfrog {
            return Err(Error::Unsupported("2D stepping implements the Hermite-leapfrog variant only"));
        }
        if grid.boundary != problem.boundary() {
            return Err(Error::Config("grid boundary mode differs from the problem's".into()));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(alloc::format!("time step must be positive, got {dt}")));
        }
        Ok(Stepper2d {
            config,
            dt,
            op: InterpOperator::new(config.m)?,
            grid,
            system: problem.system(),
        })
    }

    /// `dt = C h_min / (sqrt(2) c)` with unit speed, shrunk to land on
    /// `final_time`. The `sqrt(2)` is the two-dimensional CFL reduction.
    pub fn fitted_time_step(grid: &Grid2d, config: &SchemeConfig, final_time: f64) -> (f64, usize) {
        let dt = config.time_step(grid.hx.min(grid.hy), core::f64::consts::SQRT_2);
        let steps = libm::ceil(final_time / dt - 1e-12).max(1.0) as usize;
        (final_time / steps as f64, steps)
    }

    pub fn operator(&self) -> &InterpOperator {
        &self.op
    }

    fn workspace(&self) -> Workspace {
        let n = self.op.extended_len();
        let k = self.config.m + 1;
        Workspace {
            ext: [vec![0.0; n * n], vec![0.0; n * n], vec![0.0; n * n]],
            table: CkTable2d::zeros(n, n),
            scratch: vec![0.0; 2 * n * n.max(k) + 2 * n * n],
            weights: (0..n)
                .map(|r| powi(0.5 * self.dt, r) / factorial(r))
                .collect(),
        }
    }

    /// Leapfrog update of the `(m + 1)^2` target coefficients from entry
    /// levels of field `f`.
    fn update(&self, target: &mut [f64], ws: &Workspace, f: usize) {
        let k = self.config.m + 1;
        let n = self.op.extended_len();
        for a in 0..k {
            for b in 0..k {
                let mut acc = 0.0;
                let mut r = 1;
                while r < ws.table.levels() {
                    acc += ws.weights[r] * ws.table.entry(r, f)[a * n + b];
                    r += 2;
                }
                target[a * k + b] += 2.0 * acc;
            }
        }
    }

    /// One staggered cycle.
    pub fn step(&self, state: &mut StaggeredState2d) -> Result<()> {
        let hs = (self.grid.hx, self.grid.hy);
        let n = self.op.extended_len();
        let mut ws = self.workspace();
        let zeros = vec![0.0; n * n];

        // Field 0 from the dual fields at t + dt/2.
        let frame = apply_reflective_bc(state);
        let (px, py) = state.primary.dims();
        for i in 0..px {
            for j in 0..py {
                let (i0, j0) = (i as isize - 1, j as isize - 1);
                for f in 0..2 {
                    let corners = [
                        frame.node(f, i0, j0),
                        frame.node(f, i0 + 1, j0),
                        frame.node(f, i0, j0 + 1),
                        frame.node(f, i0 + 1, j0 + 1),
                    ];
                    let (ext, scratch) = (&mut ws.ext[f + 1], &mut ws.scratch);
                    self.op.apply_2d(corners, ext, scratch);
                }
                let [_, e1, e2] = &ws.ext;
                ck_recurrence_2d(self.system, [&zeros, e1, e2], hs, &mut ws.table, &mut ws.scratch);
                self.update(state.primary.node_mut(i, j), &ws, 0);
            }
        }
        state.t_primary += self.dt;

        // Dual fields from field 0 at t + dt.
        let (dx, dy) = self.grid.dual_dims();
        let periodic = self.grid.boundary == BoundaryMode::Periodic;
        for i in 0..dx {
            for j in 0..dy {
                let idx = |a: usize, b: usize| {
                    if periodic {
                        (a % px, b % py)
                    } else {
                        (a, b)
                    }
                };
                let c = [idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)];
                let corners = c.map(|(a, b)| state.primary.node(a, b));
                self.op.apply_2d(corners, &mut ws.ext[0], &mut ws.scratch);
                let e0 = &ws.ext[0];
                ck_recurrence_2d(self.system, [e0, &zeros, &zeros], hs, &mut ws.table, &mut ws.scratch);
                for f in 0..2 {
                    self.update(state.dual[f].node_mut(i, j), &ws, f + 1);
                }
            }
        }
        state.t_dual += self.dt;
        state.steps += 1;
        if state.is_finite() {
            Ok(())
        } else {
            Err(Error::Instability { step: state.steps })
        }
    }
}

/// Runs `steps` cycles from exact data.
pub fn evolve_2d(
    problem: &dyn Problem2d,
    grid: Grid2d,
    config: SchemeConfig,
    dt: f64,
    steps: usize,
) -> Result<StaggeredState2d> {
    let stepper = Stepper2d::new(problem, grid, config, dt)?;
    let mut state = initialize_state_2d(problem, grid, config.m, 0.0, dt);
    for _ in 0..steps {
        stepper.step(&mut state)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::AcousticMode;
    use core::f64::consts::PI;

    #[test]
    fn second_time_derivative_of_acoustic_mode() {
        let p = AcousticMode;
        let m = 3;
        let n = 2 * m + 2;
        let hs = (0.1, 0.1);
        let pos = (0.3, -0.4);
        let fields: Vec<Vec<f64>> = (0..3)
            .map(|f| exact_tensor_jet(&p, f, pos, 0.2, hs, n))
            .collect();
        let mut table = CkTable2d::zeros(n, n);
        let mut scratch = vec![0.0; 2 * n * n];
        ck_recurrence_2d(
            System2d::Acoustic,
            [&fields[0], &fields[1], &fields[2]],
            hs,
            &mut table,
            &mut scratch,
        );
        // p_tt = -2 pi^2 p; compare low-degree coefficients untouched by truncation.
        for a in 0..n - 2 {
            for b in 0..n - 2 {
                let expect = -2.0 * PI * PI * fields[0][a * n + b];
                assert!((table.entry(2, 0)[a * n + b] - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_field_gives_zero_table() {
        let n = 4;
        let z = vec![0.0; n * n];
        let mut table = CkTable2d::zeros(n, n);
        let mut scratch = vec![0.0; 2 * n * n];
        ck_recurrence_2d(System2d::MaxwellTm, [&z, &z, &z], (0.1, 0.2), &mut table, &mut scratch);
        assert!(table.data.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn mirror_indices() {
        assert_eq!(mirror_index(-1, 5), (0, true));
        assert_eq!(mirror_index(5, 5), (4, true));
        assert_eq!(mirror_index(3, 5), (3, false));
    }
}
