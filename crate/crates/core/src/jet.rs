//! Scaled Taylor coefficients ("jets").
//!
//! A jet of length `n` stores `u_i = h^i / i! * d^i u / dx^i` for
//! `i = 0..n`, so the local polynomial is `sum_i u_i ((x - x_c) / h)^i`.
//! In this scaling the product of two functions is the plain truncated
//! Cauchy product of their coefficient vectors, and one derivative maps
//! `u_i` to `(i + 1) u_{i+1} / h`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{factorial, falling, powi};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet(Vec<f64>);

impl Jet {
    pub fn zeros(len: usize) -> Self {
        Jet(vec![0.0; len])
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        Jet(coeffs)
    }

    /// Builds a jet from raw derivatives `d^i u / dx^i`.
    pub fn from_derivatives(derivatives: &[f64], h: f64) -> Self {
        let mut scale = 1.0;
        let coeffs = derivatives
            .iter()
            .enumerate()
            .map(|(i, d)| {
                if i > 0 {
                    scale *= h / i as f64;
                }
                d * scale
            })
            .collect();
        Jet(coeffs)
    }

    /// Recovers raw derivatives `d^i u / dx^i`.
    pub fn to_derivatives(&self, h: f64) -> Vec<f64> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| c * factorial(i) / powi(h, i))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Evaluates `sum_i u_i xi^i` at the normalized offset `xi = (x - x_c) / h`.
    pub fn evaluate(&self, xi: f64) -> f64 {
        horner(&self.0, xi)
    }
}

/// Truncated product of two scaled jets of equal length.
pub fn jet_multiply(a: &Jet, b: &Jet) -> Result<Jet> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut out = Jet::zeros(a.len());
    multiply_into(a.coeffs(), b.coeffs(), out.coeffs_mut());
    Ok(out)
}

/// Scaled jet of `d^order u / dx^order`.
///
/// Entry `i` of the result is `(i + order)! / i! * u_{i+order} / h^order`.
/// The result is `order` entries shorter than the input; differentiating
/// past the available degree leaves a single zero entry.
pub fn jet_differentiate(a: &Jet, order: usize, h: f64) -> Jet {
    if order == 0 {
        return a.clone();
    }
    if order >= a.len() {
        return Jet::zeros(1);
    }
    let inv = 1.0 / powi(h, order);
    let coeffs = (0..a.len() - order)
        .map(|i| falling(i + order, order) * a.0[i + order] * inv)
        .collect();
    Jet(coeffs)
}

/// Truncated Cauchy product `out = a * b`; all slices share one length.
pub(crate) fn multiply_into(a: &[f64], b: &[f64], out: &mut [f64]) {
    let n = out.len();
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..=k.min(n - 1) {
            acc += a[i] * b[k - i];
        }
        *o = acc;
    }
}

/// One derivative, keeping the length: `out_i = (i + 1) a_{i+1} / h`, last entry zero.
pub(crate) fn differentiate_padded(a: &[f64], h: f64, out: &mut [f64]) {
    let n = a.len();
    for i in 0..n - 1 {
        out[i] = (i + 1) as f64 * a[i + 1] / h;
    }
    out[n - 1] = 0.0;
}

pub(crate) fn horner(coeffs: &[f64], xi: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * xi + c)
}

/// Square array of scaled tensor coefficients.
///
/// Entry `(i, j)` holds `hx^i hy^j / (i! j!) * d^{i+j} u / dx^i dy^j`;
/// `i` is the x degree and `j` the y degree. Storage is row-major in `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorJet {
    n: usize,
    coeffs: Vec<f64>,
}

impl TensorJet {
    pub fn zeros(n: usize) -> Self {
        TensorJet {
            n,
            coeffs: vec![0.0; n * n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: coeffs.len(),
            });
        }
        Ok(TensorJet { n, coeffs })
    }

    /// Side length (`m + 1` for nodal data, `2m + 2` for reconstructed data).
    pub fn side(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.coeffs[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.coeffs[i * self.n + j] = value;
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn evaluate(&self, xi: f64, eta: f64) -> f64 {
        evaluate_tensor(&self.coeffs, self.n, xi, eta)
    }
}

pub(crate) fn evaluate_tensor(coeffs: &[f64], n: usize, xi: f64, eta: f64) -> f64 {
    let mut acc = 0.0;
    for i in (0..n).rev() {
        acc = acc * xi + horner(&coeffs[i * n..(i + 1) * n], eta);
    }
    acc
}

/// `d/dx` of a square tensor jet, padded with zeros.
pub(crate) fn tensor_dx(a: &[f64], n: usize, hx: f64, out: &mut [f64]) {
    for i in 0..n - 1 {
        let f = (i + 1) as f64 / hx;
        for j in 0..n {
            out[i * n + j] = f * a[(i + 1) * n + j];
        }
    }
    out[(n - 1) * n..].iter_mut().for_each(|o| *o = 0.0);
}

/// `d/dy` of a square tensor jet, padded with zeros.
pub(crate) fn tensor_dy(a: &[f64], n: usize, hy: f64, out: &mut [f64]) {
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        let dst = &mut out[i * n..(i + 1) * n];
        for j in 0..n - 1 {
            dst[j] = (j + 1) as f64 * row[j + 1] / hy;
        }
        dst[n - 1] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn unit_jet_is_multiplicative_identity() {
        let one = Jet::from_coeffs(vec![1.0, 0.0, 0.0, 0.0]);
        let b = Jet::from_coeffs(vec![0.3, -1.2, 2.5, 7.0]);
        assert_eq!(jet_multiply(&one, &b).unwrap(), b);
    }

    #[test]
    fn monomial_product() {
        let x = Jet::from_coeffs(vec![0.0, 1.0, 0.0, 0.0]);
        let x2 = jet_multiply(&x, &x).unwrap();
        assert_eq!(x2.coeffs(), &[0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn multiply_rejects_length_mismatch() {
        let a = Jet::zeros(3);
        let b = Jet::zeros(4);
        assert_eq!(
            jet_multiply(&a, &b),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn differentiate_order_zero_is_identity() {
        let a = Jet::from_coeffs(vec![1.0, 2.0, 3.0]);
        assert_eq!(jet_differentiate(&a, 0, 0.1), a);
    }

    #[test]
    fn differentiate_constant_is_zero() {
        let a = Jet::from_coeffs(vec![4.0, 0.0, 0.0]);
        assert_eq!(jet_differentiate(&a, 1, 0.5).coeffs(), &[0.0, 0.0]);
        assert_eq!(jet_differentiate(&a, 5, 0.5).coeffs(), &[0.0]);
    }

    #[test]
    fn second_derivative_of_sine_jet() {
        // Jet of sin at x = 0 against the analytic jet of -sin.
        let h = 0.1;
        let derivs: Vec<f64> = (0..8).map(|i| crate::math::sin_derivative(0.0, i)).collect();
        let jet = Jet::from_derivatives(&derivs, h);
        let d2 = jet_differentiate(&jet, 2, h);
        let expected: Vec<f64> = (0..6).map(|i| -crate::math::sin_derivative(0.0, i)).collect();
        let expected = Jet::from_derivatives(&expected, h);
        assert_close(d2.coeffs(), expected.coeffs(), 1e-13);
    }

    #[test]
    fn derivative_round_trip() {
        let derivs = [1.5, -2.0, 30.0, 400.0, -1e3];
        let h = 0.037;
        let back = Jet::from_derivatives(&derivs, h).to_derivatives(h);
        for (a, b) in derivs.iter().zip(&back) {
            assert!((a - b).abs() <= 1e-14 * a.abs());
        }
    }

    #[test]
    fn tensor_derivatives() {
        // u = x^2 y with hx = hy = 1: coefficient (2, 1) = 1.
        let n = 4;
        let mut t = TensorJet::zeros(n);
        t.set(2, 1, 1.0);
        let mut dx = vec![0.0; n * n];
        tensor_dx(t.coeffs(), n, 1.0, &mut dx);
        assert_eq!(dx[n + 1], 2.0);
        let mut dy = vec![0.0; n * n];
        tensor_dy(t.coeffs(), n, 1.0, &mut dy);
        assert_eq!(dy[2 * n], 1.0);
        assert_eq!(t.evaluate(0.5, 2.0), 0.5);
    }
}
