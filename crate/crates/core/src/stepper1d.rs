//! Staggered time stepping for 1D systems.
//!
//! A full cycle advances the primary-grid fields from `t` to `t + dt` using
//! the dual-grid fields at `t + dt/2`, then advances the dual-grid fields to
//! `t + 3dt/2` using the fresh primary data. The classic dual Hermite
//! variant instead keeps every field on the primary grid and passes through
//! the dual grid at `t + dt/2` within one step.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::Grid1d;
use crate::interp::InterpOperator;
use crate::jet::{differentiate_padded, multiply_into, Jet};
use crate::math::{factorial, powi, wrap};
use crate::problem::{exact_jet, Problem1d, SchemeConfig, SpeedModel, System1d, Variant};
use crate::{Error, Result};

/// Jets of equal length stored contiguously, one per node.
#[derive(Debug, Clone, PartialEq)]
pub struct JetArray {
    len: usize,
    data: Vec<f64>,
}

impl JetArray {
    pub fn zeros(nodes: usize, len: usize) -> Self {
        JetArray {
            len,
            data: vec![0.0; nodes * len],
        }
    }

    pub fn from_fn(nodes: usize, len: usize, mut f: impl FnMut(usize) -> Jet) -> Self {
        let mut out = JetArray::zeros(nodes, len);
        for j in 0..nodes {
            let jet = f(j);
            out.node_mut(j).copy_from_slice(&jet.coeffs()[..len]);
        }
        out
    }

    pub fn nodes(&self) -> usize {
        self.data.len() / self.len
    }

    pub fn jet_len(&self) -> usize {
        self.len
    }

    pub fn node(&self, j: usize) -> &[f64] {
        &self.data[j * self.len..(j + 1) * self.len]
    }

    pub fn node_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.len..(j + 1) * self.len]
    }

    pub fn jet(&self, j: usize) -> Jet {
        Jet::from_coeffs(self.node(j).to_vec())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `a * self + b * other`, elementwise.
    pub fn combine(&self, a: f64, other: &JetArray, b: f64) -> JetArray {
        JetArray {
            len: self.len,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }
}

/// Time-derivative table at one node: entry `r` holds the extended jet of
/// the `r`-th time derivative in scaled space coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CkTable {
    n: usize,
    data: Vec<f64>,
}

impl CkTable {
    pub fn zeros(levels: usize, n: usize) -> Self {
        CkTable {
            n,
            data: vec![0.0; levels * n],
        }
    }

    pub fn levels(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn entry(&self, r: usize) -> &[f64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    fn entry_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.n..(r + 1) * self.n]
    }
}

/// `c^r` times the `r`-fold derivative of `v_ext`, for `r = 0..=count`.
/// For `p_t = c v_x`, `v_t = c p_x` the odd entries are the odd time
/// derivatives of `p`.
pub fn ck_recurrence_constant(v_ext: &Jet, c: f64, count: usize, h: f64) -> CkTable {
    let n = v_ext.len();
    let mut table = CkTable::zeros(count + 1, n);
    table.entry_mut(0).copy_from_slice(v_ext.coeffs());
    let mut tmp = vec![0.0; n];
    for r in 0..count {
        differentiate_padded(table.entry(r), h, &mut tmp);
        for (o, t) in table.entry_mut(r + 1).iter_mut().zip(&tmp) {
            *o = c * t;
        }
    }
    table
}

/// Squared wave speed at a node: a constant or an extended scaled jet.
#[derive(Debug, Clone, Copy)]
pub enum C2<'a> {
    Constant(f64),
    Jet(&'a [f64]),
}

/// Alternating recurrence for `p_t = -c^2 v_x + z`, `v_t = -p_x`, filling
/// `levels` entries of each table. `forcing`, if given, holds the spatial
/// jets of `d^r z / dt^r` for `r = 0..levels - 1` contiguously.
pub fn ck_pressure_velocity_into(
    p_ext: &[f64],
    v_ext: &[f64],
    c2: C2<'_>,
    forcing: Option<&[f64]>,
    h: f64,
    p_tab: &mut CkTable,
    v_tab: &mut CkTable,
    scratch: &mut [f64],
) {
    let n = p_ext.len();
    let levels = p_tab.levels();
    p_tab.entry_mut(0).copy_from_slice(p_ext);
    v_tab.entry_mut(0).copy_from_slice(v_ext);
    let (dv, prod) = scratch[..2 * n].split_at_mut(n);
    for r in 0..levels - 1 {
        differentiate_padded(v_tab.entry(r), h, dv);
        match c2 {
            C2::Constant(c2) => {
                for (o, d) in prod.iter_mut().zip(dv.iter()) {
                    *o = c2 * d;
                }
            }
            C2::Jet(jet) => multiply_into(jet, dv, prod),
        }
        let next = p_tab.entry_mut(r + 1);
        for (o, q) in next.iter_mut().zip(prod.iter()) {
            *o = -q;
        }
        if let Some(z) = forcing {
            for (o, zi) in next.iter_mut().zip(&z[r * n..(r + 1) * n]) {
                *o += zi;
            }
        }
        differentiate_padded(p_tab.entry(r), h, dv);
        for (o, d) in v_tab.entry_mut(r + 1).iter_mut().zip(dv.iter()) {
            *o = -d;
        }
    }
}

/// Recurrence for `p_t = -c^2(x) v_x + z`, `v_t = -p_x` on extended jets,
/// returning tables with entries `0..=count`.
pub fn ck_recurrence_variable(
    p_ext: &Jet,
    v_ext: &Jet,
    c2_jet: &Jet,
    count: usize,
    h: f64,
    forcing: Option<&[Jet]>,
) -> (CkTable, CkTable) {
    let n = p_ext.len();
    let mut p_tab = CkTable::zeros(count + 1, n);
    let mut v_tab = CkTable::zeros(count + 1, n);
    let flat: Option<Vec<f64>> = forcing.map(|f| {
        let mut out = vec![0.0; (count + 1) * n];
        for (r, jet) in f.iter().enumerate().take(count + 1) {
            out[r * n..r * n + jet.len().min(n)].copy_from_slice(&jet.coeffs()[..jet.len().min(n)]);
        }
        out
    });
    let mut scratch = vec![0.0; 2 * n];
    ck_pressure_velocity_into(
        p_ext.coeffs(),
        v_ext.coeffs(),
        C2::Jet(c2_jet.coeffs()),
        flat.as_deref(),
        h,
        &mut p_tab,
        &mut v_tab,
        &mut scratch,
    );
    (p_tab, v_tab)
}

/// Recurrence for `u_t + a u_x = 0`.
pub fn ck_advection_into(u_ext: &[f64], speed: f64, h: f64, tab: &mut CkTable, scratch: &mut [f64]) {
    let n = u_ext.len();
    tab.entry_mut(0).copy_from_slice(u_ext);
    let du = &mut scratch[..n];
    for r in 0..tab.levels() - 1 {
        differentiate_padded(tab.entry(r), h, du);
        for (o, d) in tab.entry_mut(r + 1).iter_mut().zip(du.iter()) {
            *o = -speed * d;
        }
    }
}

/// How a half step combines the time-derivative table with the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    /// `u(t + dt) = u(t) + 2 sum_{r odd} (dt/2)^r / r! d_t^r u(t + dt/2)`.
    Leapfrog,
    /// Leapfrog for even-order coefficients; for odd-order coefficients
    /// `u(t + dt) = -u(t) + 2 sum_{r even} (dt/2)^r / r! d_t^r u(t + dt/2)`.
    Modified,
    /// `u(t + dt/2) = sum_r (dt/2)^r / r! d_t^r u(t)`; the target is
    /// overwritten.
    Taylor,
}

/// Applies `rule` to the first `target.len()` coefficients. `weights[r]` is
/// `(dt/2)^r / r!`.
pub fn leapfrog_half_update(target: &mut [f64], table: &CkTable, weights: &[f64], rule: UpdateRule) {
    let levels = table.levels();
    for (s, t) in target.iter_mut().enumerate() {
        let odd_sum = |start: usize| {
            let mut acc = 0.0;
            let mut r = start;
            while r < levels {
                acc += weights[r] * table.entry(r)[s];
                r += 2;
            }
            acc
        };
        match rule {
            UpdateRule::Leapfrog => *t += 2.0 * odd_sum(1),
            UpdateRule::Modified => {
                if s % 2 == 0 {
                    *t += 2.0 * odd_sum(1);
                } else {
                    // Even levels stop at 2m.
                    let mut acc = 0.0;
                    let mut r = 0;
                    while r + 1 < levels {
                        acc += weights[r] * table.entry(r)[s];
                        r += 2;
                    }
                    *t = -*t + 2.0 * acc;
                }
            }
            UpdateRule::Taylor => {
                *t = (0..levels).map(|r| weights[r] * table.entry(r)[s]).sum();
            }
        }
    }
}

/// Taylor weights `(dt/2)^r / r!` for `r = 0..levels`.
pub fn half_step_weights(dt: f64, levels: usize) -> Vec<f64> {
    (0..levels)
        .map(|r| powi(0.5 * dt, r) / factorial(r))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSide {
    Primary,
    Dual,
}

/// Fields of a 1D system on the primary and dual grids.
///
/// `primary[f]` / `dual[f]` is `None` when field `f` is not carried on that
/// grid by the variant in use.
#[derive(Debug, Clone, PartialEq)]
pub struct StaggeredState1d {
    pub grid: Grid1d,
    pub m: usize,
    pub system: System1d,
    pub variant: Variant,
    pub primary: Vec<Option<JetArray>>,
    pub dual: Vec<Option<JetArray>>,
    pub t_primary: f64,
    pub t_dual: f64,
    pub steps: usize,
}

impl StaggeredState1d {
    /// Field layout for a system and variant: `(on primary, on dual)`.
    pub fn layout(system: System1d, variant: Variant) -> (Vec<bool>, Vec<bool>) {
        let n = system.field_count();
        match (variant, system) {
            (Variant::HermiteLeapfrog, System1d::PressureVelocity) => {
                (vec![true, false], vec![false, true])
            }
            (Variant::HermiteLeapfrog, System1d::Advection { .. }) | (Variant::Modified, _) => {
                (vec![true; n], vec![true; n])
            }
            (Variant::DualHermite, _) => (vec![true; n], vec![false; n]),
        }
    }

    /// Zero state with the layout of `variant`.
    pub fn zeros(grid: Grid1d, m: usize, system: System1d, variant: Variant) -> Self {
        let (on_p, on_d) = Self::layout(system, variant);
        let alloc = |on: &[bool]| {
            on.iter()
                .map(|&b| b.then(|| JetArray::zeros(grid.k, m + 1)))
                .collect()
        };
        StaggeredState1d {
            grid,
            m,
            system,
            variant,
            primary: alloc(&on_p),
            dual: alloc(&on_d),
            t_primary: 0.0,
            t_dual: 0.0,
            steps: 0,
        }
    }

    /// Grid and time at which field `f` is best represented: the primary
    /// grid if present there, otherwise the dual grid.
    pub fn field_location(&self, f: usize) -> Option<(GridSide, &JetArray, f64)> {
        if let Some(a) = &self.primary[f] {
            Some((GridSide::Primary, a, self.t_primary))
        } else {
            self.dual[f]
                .as_ref()
                .map(|a| (GridSide::Dual, a, self.t_dual))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.primary
            .iter()
            .chain(&self.dual)
            .flatten()
            .all(|a| a.is_finite())
    }

    /// `a * self + b * other` for states with the same layout.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        let mix = |x: &[Option<JetArray>], y: &[Option<JetArray>]| {
            x.iter()
                .zip(y)
                .map(|(p, q)| match (p, q) {
                    (Some(p), Some(q)) => Some(p.combine(a, q, b)),
                    _ => None,
                })
                .collect()
        };
        StaggeredState1d {
            primary: mix(&self.primary, &other.primary),
            dual: mix(&self.dual, &other.dual),
            ..self.clone()
        }
    }

    /// Largest absolute coefficient difference to `other`.
    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (x, y) in self
            .primary
            .iter()
            .chain(&self.dual)
            .zip(other.primary.iter().chain(&other.dual))
        {
            if let (Some(x), Some(y)) = (x, y) {
                for (a, b) in x.as_slice().iter().zip(y.as_slice()) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
        worst
    }
}

/// Exact initial data: primary fields at `t0`, dual fields at `t0 + dt/2`.
pub fn initialize_state(
    problem: &dyn Problem1d,
    grid: Grid1d,
    config: &SchemeConfig,
    t0: f64,
    dt: f64,
) -> StaggeredState1d {
    let mut state = StaggeredState1d::zeros(grid, config.m, problem.system(), config.variant);
    let len = config.m + 1;
    let t_dual = match config.variant {
        Variant::DualHermite => t0,
        _ => t0 + 0.5 * dt,
    };
    for (f, slot) in state.primary.iter_mut().enumerate() {
        if let Some(a) = slot {
            *a = JetArray::from_fn(grid.k, len, |j| {
                exact_jet(problem, f, grid.primary(j), t0, grid.h, len)
            });
        }
    }
    for (f, slot) in state.dual.iter_mut().enumerate() {
        if let Some(a) = slot {
            *a = JetArray::from_fn(grid.k, len, |j| {
                exact_jet(problem, f, grid.dual(j), t_dual, grid.h, len)
            });
        }
    }
    state.t_primary = t0;
    state.t_dual = t_dual;
    state
}

/// Precomputed data for stepping one problem on one grid.
#[derive(Debug, Clone)]
pub struct Stepper1d {
    pub config: SchemeConfig,
    pub dt: f64,
    op: InterpOperator,
    speed: SpeedModel,
    grid: Grid1d,
}

struct Workspace {
    ext: Vec<Vec<f64>>,
    tables: Vec<CkTable>,
    forcing: Vec<f64>,
    scratch: Vec<f64>,
}

impl Stepper1d {
    pub fn new(problem: &dyn Problem1d, grid: Grid1d, config: SchemeConfig, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(alloc::format!("time step must be positive, got {dt}")));
        }
        let op = InterpOperator::new(config.m)?;
        let speed = SpeedModel::for_grid(problem, &grid, config.m);
        Ok(Stepper1d {
            config,
            dt,
            op,
            speed,
            grid,
        })
    }

    /// Time step for the configured CFL constant, shrunk so that an integer
    /// number of steps lands on `final_time`. Returns `(dt, steps)`.
    pub fn fitted_time_step(
        problem: &dyn Problem1d,
        grid: &Grid1d,
        config: &SchemeConfig,
        final_time: f64,
    ) -> (f64, usize) {
        let dt = config.time_step(grid.h, problem.wave_speed().c_max());
        let steps = libm::ceil(final_time / dt - 1e-12).max(1.0) as usize;
        (final_time / steps as f64, steps)
    }

    pub fn operator(&self) -> &InterpOperator {
        &self.op
    }

    fn workspace(&self, fields: usize) -> Workspace {
        let n = self.op.extended_len();
        let levels = n;
        Workspace {
            ext: vec![vec![0.0; n]; fields],
            tables: (0..fields).map(|_| CkTable::zeros(levels, n)).collect(),
            forcing: vec![0.0; levels * n],
            scratch: vec![0.0; 2 * n],
        }
    }

    /// Advances fields in `dst` (on `target`) using `src` on the other grid,
    /// with source time `t_src` and signed step `dt`.
    #[allow(clippy::too_many_arguments)]
    fn half_update(
        &self,
        problem: &dyn Problem1d,
        src: &[Option<JetArray>],
        dst: &mut [Option<JetArray>],
        target: GridSide,
        t_src: f64,
        dt: f64,
        rule: UpdateRule,
    ) {
        let grid = &self.grid;
        let k = grid.k;
        let h = grid.h;
        let n = self.op.extended_len();
        let system = problem.system();
        let mut ws = self.workspace(system.field_count());
        let weights = half_step_weights(dt, n);
        let forcing = problem.has_forcing();
        for j in 0..k {
            let (left, x) = match target {
                GridSide::Primary => (wrap(j as isize - 1, k), grid.primary(j)),
                GridSide::Dual => (j, grid.dual(j)),
            };
            let right = (left + 1) % k;
            for (f, ext) in ws.ext.iter_mut().enumerate() {
                match &src[f] {
                    Some(a) => self.op.apply(a.node(left), a.node(right), ext),
                    None => ext.iter_mut().for_each(|e| *e = 0.0),
                }
            }
            match system {
                System1d::PressureVelocity => {
                    let c2 = match &self.speed {
                        SpeedModel::Constant { c } => C2::Constant(c * c),
                        SpeedModel::Smooth { primary, dual, .. } => C2::Jet(match target {
                            GridSide::Primary => primary[j].coeffs(),
                            GridSide::Dual => dual[j].coeffs(),
                        }),
                    };
                    if forcing {
                        for r in 0..n {
                            let z = &mut ws.forcing[r * n..(r + 1) * n];
                            let mut scale = 1.0;
                            for (i, zi) in z.iter_mut().enumerate() {
                                if i > 0 {
                                    scale *= h / i as f64;
                                }
                                *zi = scale * problem.forcing_derivative(x, t_src, i, r);
                            }
                        }
                    }
                    let (pt, vt) = ws.tables.split_at_mut(1);
                    ck_pressure_velocity_into(
                        &ws.ext[0],
                        &ws.ext[1],
                        c2,
                        forcing.then_some(&ws.forcing[..]),
                        h,
                        &mut pt[0],
                        &mut vt[0],
                        &mut ws.scratch,
                    );
                }
                System1d::Advection { speed } => {
                    ck_advection_into(&ws.ext[0], speed, h, &mut ws.tables[0], &mut ws.scratch);
                }
            }
            for (f, slot) in dst.iter_mut().enumerate() {
                if let Some(a) = slot {
                    leapfrog_half_update(a.node_mut(j), &ws.tables[f], &weights, rule);
                }
            }
        }
    }

    fn check(&self, state: &StaggeredState1d) -> Result<()> {
        if state.is_finite() {
            Ok(())
        } else {
            Err(Error::Instability { step: state.steps })
        }
    }

    /// One cycle of the staggered scheme with the given update rule.
    fn step_staggered(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d, rule: UpdateRule) -> Result<()> {
        let dt = self.dt;
        self.half_update(
            problem,
            &state.dual,
            &mut state.primary,
            GridSide::Primary,
            state.t_dual,
            dt,
            rule,
        );
        state.t_primary += dt;
        self.half_update(
            problem,
            &state.primary,
            &mut state.dual,
            GridSide::Dual,
            state.t_primary,
            dt,
            rule,
        );
        state.t_dual += dt;
        state.steps += 1;
        self.check(state)
    }

    /// Hermite-leapfrog cycle: primary fields to `t + dt`, then dual fields
    /// to `t + 3dt/2`.
    pub fn step_system(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d) -> Result<()> {
        self.step_staggered(state, problem, UpdateRule::Leapfrog)
    }

    /// Modified Hermite-leapfrog cycle; every field lives on both grids.
    pub fn step_modified(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d) -> Result<()> {
        if state.primary.iter().chain(&state.dual).any(Option::is_none) {
            return Err(Error::Config("modified scheme needs every field on both grids".into()));
        }
        self.step_staggered(state, problem, UpdateRule::Modified)
    }

    /// Classic dual Hermite step: primary to dual at `t + dt/2`, then back.
    pub fn step_dual_hermite(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d) -> Result<()> {
        if state.primary.iter().any(Option::is_none) {
            return Err(Error::Config("dual Hermite needs every field on the primary grid".into()));
        }
        let len = self.config.m + 1;
        let mut half: Vec<Option<JetArray>> = state
            .primary
            .iter()
            .map(|_| Some(JetArray::zeros(self.grid.k, len)))
            .collect();
        self.half_update(
            problem,
            &state.primary,
            &mut half,
            GridSide::Dual,
            state.t_primary,
            self.dt,
            UpdateRule::Taylor,
        );
        let mid = state.t_primary + 0.5 * self.dt;
        self.half_update(
            problem,
            &half,
            &mut state.primary,
            GridSide::Primary,
            mid,
            self.dt,
            UpdateRule::Taylor,
        );
        state.t_primary += self.dt;
        state.t_dual = state.t_primary;
        state.steps += 1;
        self.check(state)
    }

    /// Dispatches on the configured variant.
    pub fn step(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d) -> Result<()> {
        match self.config.variant {
            Variant::HermiteLeapfrog => self.step_system(state, problem),
            Variant::Modified => self.step_modified(state, problem),
            Variant::DualHermite => self.step_dual_hermite(state, problem),
        }
    }

    /// Undoes one leapfrog or modified cycle: dual fields back by `dt`, then
    /// primary fields back by `dt`.
    pub fn step_reverse(&self, state: &mut StaggeredState1d, problem: &dyn Problem1d) -> Result<()> {
        let rule = match self.config.variant {
            Variant::HermiteLeapfrog => UpdateRule::Leapfrog,
            Variant::Modified => UpdateRule::Modified,
            Variant::DualHermite => return Err(Error::Unsupported("dual Hermite is not reversible")),
        };
        let dt = -self.dt;
        state.t_dual += dt;
        self.half_update(
            problem,
            &state.primary,
            &mut state.dual,
            GridSide::Dual,
            state.t_primary,
            dt,
            rule,
        );
        state.t_primary += dt;
        self.half_update(
            problem,
            &state.dual,
            &mut state.primary,
            GridSide::Primary,
            state.t_dual,
            dt,
            rule,
        );
        state.steps = state.steps.saturating_sub(1);
        self.check(state)
    }

    /// Dual-grid fields one step earlier than stored (at `t_primary - dt/2`),
    /// leaving `state` untouched.
    pub fn previous_dual(&self, state: &StaggeredState1d, problem: &dyn Problem1d) -> Result<Vec<Option<JetArray>>> {
        let rule = match self.config.variant {
            Variant::HermiteLeapfrog => UpdateRule::Leapfrog,
            Variant::Modified => UpdateRule::Modified,
            Variant::DualHermite => return Err(Error::Unsupported("dual Hermite keeps no dual fields")),
        };
        let mut dual = state.dual.clone();
        self.half_update(
            problem,
            &state.primary,
            &mut dual,
            GridSide::Dual,
            state.t_primary,
            -self.dt,
            rule,
        );
        Ok(dual)
    }
}

/// Runs `steps` steps from exact data and returns the final state.
pub fn evolve(
    problem: &dyn Problem1d,
    grid: Grid1d,
    config: SchemeConfig,
    dt: f64,
    steps: usize,
) -> Result<StaggeredState1d> {
    let stepper = Stepper1d::new(problem, grid, config, dt)?;
    let mut state = initialize_state(problem, grid, &config, 0.0, dt);
    for _ in 0..steps {
        stepper.step(&mut state, problem)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos_derivative, sin_derivative};
    use crate::problem::WaveSpeed;
    use core::f64::consts::PI;

    struct Zero;
    impl Problem1d for Zero {
        fn system(&self) -> System1d {
            System1d::PressureVelocity
        }
        fn domain(&self) -> (f64, f64) {
            (-1.0, 1.0)
        }
        fn exact_derivative(&self, _: usize, _: f64, _: f64, _: usize) -> f64 {
            0.0
        }
    }

    fn scaled(derivs: impl Fn(usize) -> f64, h: f64, n: usize) -> Jet {
        let d: Vec<f64> = (0..n).map(derivs).collect();
        Jet::from_derivatives(&d, h)
    }

    #[test]
    fn zero_speed_gives_zero_time_derivatives() {
        let v = Jet::from_coeffs(vec![1.0, 2.0, 3.0, 4.0]);
        let t = ck_recurrence_constant(&v, 0.0, 3, 0.1);
        for r in 1..=3 {
            assert!(t.entry(r).iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn affine_velocity_has_one_derivative() {
        let h = 0.25;
        // v = x, scaled jet (0, h).
        let v = Jet::from_coeffs(vec![0.0, h, 0.0, 0.0]);
        let t = ck_recurrence_constant(&v, 1.0, 3, h);
        assert_eq!(t.entry(1), &[1.0, 0.0, 0.0, 0.0]);
        assert!(t.entry(2).iter().chain(t.entry(3)).all(|&x| x == 0.0));
    }

    #[test]
    fn third_entry_matches_analytic_derivative() {
        let h = 0.05;
        let x0 = 0.3;
        let n = 8;
        let v = scaled(|i| sin_derivative(2.0 * PI * x0, i) * powi(2.0 * PI, i), h, n);
        let t = ck_recurrence_constant(&v, 1.0, 3, h);
        let expect = scaled(|i| sin_derivative(2.0 * PI * x0, i + 3) * powi(2.0 * PI, i + 3), h, n);
        for s in 0..n - 3 {
            assert!((t.entry(3)[s] - expect.coeffs()[s]).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_variable_speed_matches_constant_recurrence() {
        let h = 0.1;
        let n = 6;
        let p = Jet::from_coeffs(vec![0.3, -0.2, 0.5, 0.1, -0.4, 0.25]);
        let v = Jet::from_coeffs(vec![-0.1, 0.7, 0.2, -0.3, 0.05, 0.6]);
        let mut one = vec![0.0; n];
        one[0] = 1.0;
        let (pt, vt) = ck_recurrence_variable(&p, &v, &Jet::from_coeffs(one), n - 1, h, None);
        // With c = 1 and the sign flip v -> -v the odd p entries are D^r(-v).
        let neg_v = Jet::from_coeffs(v.coeffs().iter().map(|x| -x).collect());
        let c = ck_recurrence_constant(&neg_v, 1.0, n - 1, h);
        let cp = ck_recurrence_constant(&p, -1.0, n - 1, h);
        for r in (1..n).step_by(2) {
            for s in 0..n {
                assert!((pt.entry(r)[s] - c.entry(r)[s]).abs() < 1e-13);
                assert!((vt.entry(r)[s] - cp.entry(r)[s]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn manufactured_variable_speed_recurrence() {
        // p = sin(x - t), v = sin(x - t), c^2 = 1 + sin(x)/2, z chosen to fit.
        let h = 0.1;
        let x0 = 0.7;
        let t0 = 0.2;
        let n = 8;
        let p = scaled(|i| sin_derivative(x0 - t0, i), h, n);
        let c2 = scaled(
            |i| if i == 0 { 1.0 + 0.5 * libm::sin(x0) } else { 0.5 * sin_derivative(x0, i) },
            h,
            n,
        );
        // z = sin(x) cos(x - t) / 2; d_t^r d_x^i via Leibniz in x.
        let z_deriv = |i: usize, r: usize| -> f64 {
            let mut acc = 0.0;
            for a in 0..=i {
                let time = powi(-1.0, r) * cos_derivative(x0 - t0, i - a + r);
                acc += crate::math::binomial(i, a) * sin_derivative(x0, a) * time;
            }
            0.5 * acc
        };
        let forcing: Vec<Jet> = (0..n).map(|r| scaled(|i| z_deriv(i, r), h, n)).collect();
        let (pt, _) = ck_recurrence_variable(&p, &p, &c2, n - 1, h, Some(&forcing));
        for r in 0..n {
            let expect = scaled(|i| powi(-1.0, r) * sin_derivative(x0 - t0, i + r), h, n);
            // Truncation removes r degrees from the top of the jet.
            for s in 0..n - r {
                assert!(
                    (pt.entry(r)[s] - expect.coeffs()[s]).abs() < 1e-12,
                    "r = {r}, s = {s}"
                );
            }
        }
    }

    #[test]
    fn zero_step_leaves_target_unchanged() {
        let table = CkTable {
            n: 4,
            data: (0..16).map(|i| i as f64).collect(),
        };
        let w = half_step_weights(0.0, 4);
        let mut t = [1.0, 2.0];
        leapfrog_half_update(&mut t, &table, &w, UpdateRule::Leapfrog);
        assert_eq!(t, [1.0, 2.0]);
    }

    #[test]
    fn order_zero_is_staggered_difference() {
        // m = 0, p~0 += 2 (c dt / 2h) v~1 where v~1 = h v_x.
        let h = 0.2;
        let dt = 0.15;
        let v = Jet::from_coeffs(vec![0.4, 0.9]);
        let table = ck_recurrence_constant(&v, 1.0, 1, h);
        let w = half_step_weights(dt, 2);
        let mut p = [0.5];
        leapfrog_half_update(&mut p, &table, &w, UpdateRule::Leapfrog);
        assert!((p[0] - (0.5 + 2.0 * (dt / (2.0 * h)) * 0.9)).abs() < 1e-15);
    }

    #[test]
    fn scaled_update_matches_raw_derivative_form() {
        // p~_s += 2 sum_{j odd} (c dt / 2h)^j C(j + s, j) v~_{j+s}
        let h = 0.3;
        let dt = 0.2;
        let c = 1.3;
        let m = 3;
        let n = 2 * m + 2;
        let v = Jet::from_coeffs((0..n).map(|i| 0.1 * i as f64 - 0.35).collect());
        let table = ck_recurrence_constant(&v, c, n - 1, h);
        let w = half_step_weights(dt, n);
        let mut p = vec![0.0; m + 1];
        leapfrog_half_update(&mut p, &table, &w, UpdateRule::Leapfrog);
        for s in 0..=m {
            let mut expect = 0.0;
            let mut j = 1;
            while j + s < n {
                expect += 2.0
                    * powi(c * dt / (2.0 * h), j)
                    * crate::math::binomial(j + s, j)
                    * v.coeffs()[j + s];
                j += 2;
            }
            assert!((p[s] - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_data_stays_zero() {
        let grid = Grid1d::periodic(-1.0, 1.0, 8).unwrap();
        for variant in [Variant::HermiteLeapfrog, Variant::Modified, Variant::DualHermite] {
            let cfg = SchemeConfig::new(2, 0.9, variant).unwrap();
            let s = evolve(&Zero, grid, cfg, 0.2, 5).unwrap();
            assert!(s
                .primary
                .iter()
                .chain(&s.dual)
                .flatten()
                .all(|a| a.as_slice().iter().all(|&x| x == 0.0)));
        }
    }

    #[test]
    fn layouts_follow_variant() {
        let pv = System1d::PressureVelocity;
        assert_eq!(
            StaggeredState1d::layout(pv, Variant::HermiteLeapfrog),
            (vec![true, false], vec![false, true])
        );
        assert_eq!(
            StaggeredState1d::layout(pv, Variant::DualHermite),
            (vec![true, true], vec![false, false])
        );
        assert_eq!(Zero.wave_speed(), WaveSpeed::Constant(1.0));
    }
}
