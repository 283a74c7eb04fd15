use alloc::vec::Vec;

use crate::interp::InterpOperator;
use crate::piecewise::PiecewisePoly;
use crate::problem::{Problem1d, System1d, WaveSpeed};
use crate::quadrature::GaussLegendre;
use crate::stepper1d::{JetArray, StaggeredState1d, Stepper1d};
use crate::{Error, Result};

/// `scale * f(x + shift)`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedTerm<'a> {
    pub scale: f64,
    pub poly: &'a PiecewisePoly,
    pub shift: f64,
}

/// Squared seminorm `int (d^order f)^2` of one piecewise polynomial.
pub fn sobolev_seminorm(f: &PiecewisePoly, order: usize) -> f64 {
    seminorm_of_combination(
        &[ShiftedTerm {
            scale: 1.0,
            poly: f,
            shift: 0.0,
        }],
        order,
    )
}

/// Squared seminorm of `sum scale_i f_i(x + shift_i)` over one period.
///
/// All terms must share the period. The integration runs over the union of
/// every term's shifted breakpoints with a Gauss rule exact for the
/// integrand degree, so no term is evaluated across one of its own breaks.
pub fn seminorm_of_combination(terms: &[ShiftedTerm<'_>], order: usize) -> f64 {
    let Some(first) = terms.first() else {
        return 0.0;
    };
    let period = first.poly.period();
    let start = first.poly.breakpoints()[0];
    let mut cuts: Vec<f64> = Vec::new();
    for t in terms {
        for b in t.poly.breakpoints() {
            let x = b - t.shift;
            let y = x - period * libm::floor((x - start) / period);
            cuts.push(y);
        }
    }
    cuts.push(start);
    cuts.push(start + period);
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * period);

    let degree = terms
        .iter()
        .map(|t| t.poly.coeff_len().saturating_sub(1 + order))
        .max()
        .unwrap_or(0);
    let q = GaussLegendre::new(degree + 1);
    let mut sum = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        let mid = 0.5 * (a + b);
        // Pin each term to the cell containing the subinterval midpoint.
        let cells: Vec<(usize, f64)> = terms
            .iter()
            .map(|t| {
                let (j, xi) = t.poly.locate(mid + t.shift);
                (j, xi)
            })
            .collect();
        sum += q.integrate(a, b, |x| {
            let mut v = 0.0;
            for (t, &(j, xi_mid)) in terms.iter().zip(&cells) {
                let xi = xi_mid + (x - mid) / t.poly.h();
                v += t.scale * t.poly.cell_derivative(j, xi, order);
            }
            v * v
        });
    }
    sum
}

/// `(Q, R)` for the symmetric system `p_t = c w_x`, `w_t = c p_x`.
///
/// `p` is the interpolant at time `t`, `w_before` at `t - dt/2` and
/// `w_after` at `t + dt/2`; shifts are `c dt / 2`. Seminorms use order
/// `m + 1`.
pub fn conserved_quantities(
    p: &PiecewisePoly,
    w_before: &PiecewisePoly,
    w_after: &PiecewisePoly,
    c: f64,
    dt: f64,
    m: usize,
) -> (f64, f64) {
    let s = 0.5 * c * dt;
    let order = m + 1;
    let term = |scale: f64, poly, shift: f64| ShiftedTerm { scale, poly, shift };
    let q = seminorm_of_combination(&[term(1.0, p, 0.0), term(-1.0, w_before, s)], order)
        + seminorm_of_combination(&[term(1.0, p, 0.0), term(1.0, w_before, -s)], order);
    let r = seminorm_of_combination(&[term(1.0, w_after, 0.0), term(-1.0, p, s)], order)
        + seminorm_of_combination(&[term(1.0, w_after, 0.0), term(1.0, p, -s)], order);
    (q, r)
}

/// `(Q(t), R(t + dt/2))` for a Hermite-leapfrog pressure-velocity state with
/// `p` at `t` and `v` at `t + dt/2`. The system `p_t = -c^2 v_x`,
/// `v_t = -p_x` is mapped to the symmetric form with `w = -c v`.
pub fn state_conserved_quantities(
    stepper: &Stepper1d,
    state: &StaggeredState1d,
    problem: &dyn Problem1d,
) -> Result<(f64, f64)> {
    let c = match (problem.system(), problem.wave_speed()) {
        (System1d::PressureVelocity, WaveSpeed::Constant(c)) => c,
        _ => return Err(Error::Unsupported("conserved quantities need constant-speed pressure-velocity data")),
    };
    let missing = || Error::Config("state lacks p on the primary grid or v on the dual grid".into());
    let p = state.primary[0].as_ref().ok_or_else(missing)?;
    let v_after = state.dual[1].as_ref().ok_or_else(missing)?;
    let before = stepper.previous_dual(state, problem)?;
    let v_before = before[1].as_ref().ok_or_else(missing)?;
    let op: &InterpOperator = stepper.operator();
    let g = &state.grid;
    let scale = |a: &JetArray| {
        let mut out = a.clone();
        out.as_mut_slice().iter_mut().for_each(|x| *x *= -c);
        out
    };
    let pp = PiecewisePoly::interpolate_primary(op, g, p);
    let wb = PiecewisePoly::interpolate_dual(op, g, &scale(v_before));
    let wa = PiecewisePoly::interpolate_dual(op, g, &scale(v_after));
    Ok(conserved_quantities(&pp, &wb, &wa, c, stepper.dt, state.m))
}
