use hermite_lf::analysis::{convergence_rate, sobolev_seminorm};
use hermite_lf::interp::{reconstruct_cell_1d, reconstruct_cell_2d};
use hermite_lf::quadrature::GaussLegendre;
use hermite_lf::stepper1d::JetArray;
use hermite_lf::{InterpOperator, Jet, PiecewisePoly, TensorJet, MAX_ORDER};
use proptest::prelude::*;
use std::f64::consts::PI;

/// `d^d/dx^d sum_i a_i x^i`.
fn poly_derivative(a: &[f64], x: f64, d: usize) -> f64 {
    let mut acc = 0.0;
    for i in (d..a.len()).rev() {
        let f: f64 = (0..d).map(|k| (i - k) as f64).product();
        acc = acc * x + f * a[i];
    }
    acc
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Scaled jet `h^i / i! * q^(i)(x)` of length `len`.
fn poly_jet(a: &[f64], x: f64, h: f64, len: usize) -> Jet {
    Jet::from_coeffs(
        (0..len)
            .map(|i| h.powi(i as i32) / factorial(i) * poly_derivative(a, x, i))
            .collect(),
    )
}

/// Scaled jet at `x` of `sum_i a_i t^i` with `h = 1`: `sum_i a_i C(i, d) x^(i-d)`.
///
/// For integer `a_i` and `x = +-1/2` every term and partial sum is a dyadic
/// rational with few bits, so the jet is exact in double precision.
fn exact_jet(a: &[f64], x: f64, len: usize) -> Jet {
    let binom = |n: usize, k: usize| (0..k).fold(1.0, |b, j| b * (n - j) as f64 / (j + 1) as f64);
    Jet::from_coeffs(
        (0..len)
            .map(|d| (d..a.len()).map(|i| a[i] * binom(i, d) * x.powi((i - d) as i32)).sum())
            .collect(),
    )
}

fn integer_poly(m: usize, bound: i32) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-bound..=bound, 2 * m + 2).prop_map(|v| v.into_iter().map(f64::from).collect())
}

fn order_and_poly() -> impl Strategy<Value = (usize, Vec<f64>, f64, f64)> {
    (0..=MAX_ORDER).prop_flat_map(|m| {
        (
            Just(m),
            prop::collection::vec(-1.0..1.0f64, 2 * m + 2),
            0.05..1.0f64,
            -1.0..1.0f64,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reconstruction_is_exact_on_degree_2m_plus_1((m, a) in (0..=MAX_ORDER).prop_flat_map(|m| (Just(m), integer_poly(m, 255)))) {
        let op = InterpOperator::new(m).unwrap();
        let left = exact_jet(&a, -0.5, m + 1);
        let right = exact_jet(&a, 0.5, m + 1);
        let ext = reconstruct_cell_1d(&op, &left, &right).unwrap();
        let scale = left.coeffs().iter().chain(right.coeffs()).fold(1.0f64, |s, x| s.max(x.abs()));
        for (g, e) in ext.coeffs().iter().zip(&a) {
            prop_assert!((g - e).abs() < 1e-11 * scale, "m={m}: {g} vs {e}");
        }
    }

    #[test]
    fn reconstruction_error_is_bounded_by_conditioning((m, a, h, c) in order_and_poly()) {
        // Rounded endpoint jets: the error may grow by cond(M) over the data rounding.
        let op = InterpOperator::new(m).unwrap();
        let left = poly_jet(&a, c - 0.5 * h, h, m + 1);
        let right = poly_jet(&a, c + 0.5 * h, h, m + 1);
        let ext = reconstruct_cell_1d(&op, &left, &right).unwrap();
        let expect = poly_jet(&a, c, h, 2 * m + 2);
        let scale = left.coeffs().iter().chain(right.coeffs()).fold(1.0f64, |s, x| s.max(x.abs()));
        let tol = 1e-11f64.max(100.0 * op.condition() * f64::EPSILON) * scale;
        for (g, e) in ext.coeffs().iter().zip(expect.coeffs()) {
            prop_assert!((g - e).abs() < tol, "m={m}: {g} vs {e}");
        }
    }

    #[test]
    fn tensor_sweeps_commute(m in 0usize..=4, seed in prop::collection::vec(-1.0..1.0f64, 4 * 25)) {
        let op = InterpOperator::new(m).unwrap();
        let k = m + 1;
        let n = 2 * k;
        let corners: Vec<Vec<f64>> = (0..4).map(|c| seed[c * 25..c * 25 + k * k].to_vec()).collect();
        let refs = [&corners[0][..], &corners[1][..], &corners[2][..], &corners[3][..]];
        let mut a = vec![0.0; n * n];
        let mut b = vec![0.0; n * n];
        let mut scratch = vec![0.0; 2 * n * k];
        op.apply_2d(refs, &mut a, &mut scratch);
        op.apply_2d_y_first(refs, &mut b, &mut scratch);
        let scale = a.iter().fold(1.0f64, |s, x| s.max(x.abs()));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-13 * scale);
        }
    }

    #[test]
    fn tensor_reconstruction_is_exact((m, qx, qy) in (0usize..=4).prop_flat_map(|m| (Just(m), integer_poly(m, 15), integer_poly(m, 15)))) {
        // p(x, y) = qx(x) qy(y) with both factors of degree 2m + 1; corner
        // products stay exact for coefficients up to 15 in magnitude.
        let op = InterpOperator::new(m).unwrap();
        let (k, n) = (m + 1, 2 * m + 2);
        let tensor = |x: f64, y: f64| {
            let jx = exact_jet(&qx, x, k);
            let jy = exact_jet(&qy, y, k);
            let mut t = TensorJet::zeros(k);
            for i in 0..k {
                for j in 0..k {
                    t.set(i, j, jx.coeffs()[i] * jy.coeffs()[j]);
                }
            }
            t
        };
        let c = [tensor(-0.5, -0.5), tensor(0.5, -0.5), tensor(-0.5, 0.5), tensor(0.5, 0.5)];
        let ext = reconstruct_cell_2d(&op, [&c[0], &c[1], &c[2], &c[3]]).unwrap();
        let scale = c.iter().flat_map(|t| t.coeffs()).fold(1.0f64, |s, x| s.max(x.abs()));
        for i in 0..n {
            for j in 0..n {
                let e = qx[i] * qy[j];
                prop_assert!((ext.get(i, j) - e).abs() < 1e-11 * scale, "m={m} ({i},{j}): {} vs {e}", ext.get(i, j));
            }
        }
    }
}

#[test]
fn constant_data_gives_constant_extension() {
    for m in 0..=MAX_ORDER {
        let op = InterpOperator::new(m).unwrap();
        let mut jet = Jet::zeros(m + 1);
        jet.coeffs_mut()[0] = 2.5;
        let ext = reconstruct_cell_1d(&op, &jet, &jet).unwrap();
        assert!((ext.coeffs()[0] - 2.5).abs() < 1e-13);
        assert!(ext.coeffs()[1..].iter().all(|c| c.abs() < 1e-12));
    }
}

#[test]
fn order_zero_is_linear_interpolation() {
    let op = InterpOperator::new(0).unwrap();
    let ext = reconstruct_cell_1d(&op, &Jet::from_coeffs(vec![1.0]), &Jet::from_coeffs(vec![4.0])).unwrap();
    assert_eq!(ext.coeffs(), &[2.5, 3.0]);
}

#[test]
fn cubic_from_order_one_endpoints() {
    // u = x^3 with h = 1: jets (x^3, 3x^2) at -1/2 and 1/2; centered jet (0, 0, 0, 1).
    let op = InterpOperator::new(1).unwrap();
    let left = Jet::from_coeffs(vec![-0.125, 0.75]);
    let right = Jet::from_coeffs(vec![0.125, 0.75]);
    let ext = reconstruct_cell_1d(&op, &left, &right).unwrap();
    for (g, e) in ext.coeffs().iter().zip([0.0, 0.0, 0.0, 1.0]) {
        assert!((g - e).abs() < 1e-14);
    }
}

#[test]
fn wrong_jet_length_is_rejected() {
    let op = InterpOperator::new(2).unwrap();
    assert!(reconstruct_cell_1d(&op, &Jet::zeros(2), &Jet::zeros(3)).is_err());
}

/// Trigonometric test function `sum_w a_w sin(2 pi w x + phi_w)` on `[0, 1)`.
#[derive(Clone, Debug)]
struct Trig {
    modes: Vec<(f64, f64, f64)>,
}

impl Trig {
    fn derivative(&self, x: f64, d: usize) -> f64 {
        self.modes
            .iter()
            .map(|&(w, a, phi)| {
                let k = 2.0 * PI * w;
                a * k.powi(d as i32) * (k * x + phi + 0.5 * PI * d as f64).sin()
            })
            .sum()
    }

    /// `int_0^1 (d^d f)^2` for distinct integer frequencies.
    fn seminorm(&self, d: usize) -> f64 {
        self.modes
            .iter()
            .map(|&(w, a, _)| 0.5 * a * a * (2.0 * PI * w).powi(2 * d as i32))
            .sum()
    }

    fn jets(&self, k: usize, len: usize) -> JetArray {
        let h = 1.0 / k as f64;
        JetArray::from_fn(k, len, |j| {
            let d: Vec<f64> = (0..len).map(|i| self.derivative(j as f64 * h, i)).collect();
            Jet::from_derivatives(&d, h)
        })
    }
}

fn trig() -> impl Strategy<Value = Trig> {
    prop::collection::vec((-1.0..1.0f64, 0.0..6.3f64), 1..4).prop_map(|v| Trig {
        modes: v.into_iter().enumerate().map(|(i, (a, phi))| ((i + 1) as f64, a, phi)).collect(),
    })
}

/// `int (d^order (f - I f))^2` over `[0, 1)` with 24 Gauss points per cell.
fn residual_seminorm(f: &Trig, interp: &PiecewisePoly, order: usize) -> f64 {
    let q = GaussLegendre::new(24);
    let h = interp.h();
    (0..interp.cells())
        .map(|j| {
            let c = interp.center(j);
            q.integrate(c - 0.5 * h, c + 0.5 * h, |x| {
                let d = f.derivative(x, order) - interp.cell_derivative(j, (x - c) / h, order);
                d * d
            })
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pythagoras_in_the_m_plus_1_seminorm(m in 0usize..=4, k in 8usize..24, f in trig()) {
        let op = InterpOperator::new(m).unwrap();
        let interp = PiecewisePoly::interpolate_primary(&op, &hermite_lf::Grid1d::periodic(0.0, 1.0, k).unwrap(), &f.jets(k, m + 1));
        let full = f.seminorm(m + 1);
        let part = sobolev_seminorm(&interp, m + 1);
        let rest = residual_seminorm(&f, &interp, m + 1);
        prop_assert!(((part + rest) - full).abs() <= 1e-10 * full, "{full} vs {part} + {rest}");
        prop_assert!(part <= full * (1.0 + 1e-10));
    }
}

#[test]
fn interpolation_error_orders() {
    let f = Trig { modes: vec![(1.0, 1.0, 0.3), (2.0, 0.5, 1.1)] };
    for m in 0..=3 {
        let op = InterpOperator::new(m).unwrap();
        let ks: &[usize] = if m < 2 { &[16, 32, 64, 128] } else { &[8, 16, 32, 64] };
        let mut l2 = Vec::new();
        let mut semi = Vec::new();
        for &k in ks {
            let grid = hermite_lf::Grid1d::periodic(0.0, 1.0, k).unwrap();
            let interp = PiecewisePoly::interpolate_primary(&op, &grid, &f.jets(k, m + 1));
            l2.push((grid.h, residual_seminorm(&f, &interp, 0).sqrt()));
            semi.push((grid.h, residual_seminorm(&f, &interp, m + 1).sqrt()));
        }
        let r0 = convergence_rate(&l2).unwrap().rate;
        let r1 = convergence_rate(&semi).unwrap().rate;
        assert!((r0 - (2 * m + 2) as f64).abs() < 0.3, "m={m}: L2 rate {r0}");
        assert!((r1 - (m + 1) as f64).abs() < 0.3, "m={m}: seminorm rate {r1}");
    }
}
