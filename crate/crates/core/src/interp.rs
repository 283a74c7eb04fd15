//! Hermite-Birkhoff reconstruction on a centered cell.
//!
//! Two endpoint jets of order `m`, located at `-h/2` and `+h/2` from the
//! target node, determine a unique polynomial of degree `2m + 1`. Its
//! scaled coefficients about the target node form the extended jet.

use alloc::vec;
use alloc::vec::Vec;

use crate::jet::{Jet, TensorJet};
use crate::linalg::norm1;
use crate::math::{binomial, powi, Dot2};
use crate::{Error, Result, MAX_ORDER};

/// Precomputed map from stacked endpoint jets `[left; right]` to the
/// centered extended jet.
#[derive(Debug, Clone)]
pub struct InterpOperator {
    m: usize,
    matrix: Vec<f64>,
    condition: f64,
}

impl InterpOperator {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_ORDER {
            return Err(Error::OrderTooLarge(m));
        }
        let n = 2 * m + 2;
        // Row l of each block: scaled l-th derivative of xi^s at the endpoint,
        // C(s, l) * xi^(s - l).
        let mut system = vec![0.0; n * n];
        for (block, offset) in [(0usize, -0.5f64), (m + 1, 0.5)] {
            for l in 0..=m {
                for s in l..n {
                    system[(block + l) * n + s] = binomial(s, l) * powi(offset, s - l);
                }
            }
        }
        let matrix = two_point_basis(m);
        let condition = norm1(&system, n) * norm1(&matrix, n);
        Ok(InterpOperator {
            m,
            matrix,
            condition,
        })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Length of the reconstructed jet, `2m + 2`.
    pub fn extended_len(&self) -> usize {
        2 * self.m + 2
    }

    /// 1-norm condition number of the endpoint system.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// Row-major `(2m + 2) x (2m + 2)` reconstruction matrix.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    /// Reconstructs into `out` (length `2m + 2`) from endpoint slices of
    /// length `m + 1`.
    pub fn apply(&self, left: &[f64], right: &[f64], out: &mut [f64]) {
        let k = self.m + 1;
        let n = 2 * k;
        debug_assert!(left.len() == k && right.len() == k && out.len() == n);
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.matrix[i * n..(i + 1) * n];
            let mut acc = Dot2::default();
            for j in 0..k {
                acc.add(row[j], left[j]);
                acc.add(row[k + j], right[j]);
            }
            *o = acc.value();
        }
    }

    /// Strided variant of [`apply`](Self::apply) used by the tensor sweeps.
    fn apply_strided(
        &self,
        left: &[f64],
        right: &[f64],
        stride_in: usize,
        out: &mut [f64],
        stride_out: usize,
    ) {
        let k = self.m + 1;
        let n = 2 * k;
        for i in 0..n {
            let row = &self.matrix[i * n..(i + 1) * n];
            let mut acc = Dot2::default();
            for j in 0..k {
                acc.add(row[j], left[j * stride_in]);
                acc.add(row[k + j], right[j * stride_in]);
            }
            out[i * stride_out] = acc.value();
        }
    }

    /// Tensor reconstruction from four corner jets of side `m + 1`
    /// (`sw`, `se`, `nw`, `ne` in x-major layout) into `out` of side `2m + 2`.
    /// The x sweep runs first, then the y sweep.
    pub fn apply_2d(&self, corners: [&[f64]; 4], out: &mut [f64], scratch: &mut [f64]) {
        let k = self.m + 1;
        let n = 2 * k;
        let [sw, se, nw, ne] = corners;
        // scratch layout: [side][i (0..n)][j (0..k)]
        let (south, north) = scratch[..2 * n * k].split_at_mut(n * k);
        for j in 0..k {
            self.apply_strided(&sw[j..], &se[j..], k, &mut south[j..], k);
            self.apply_strided(&nw[j..], &ne[j..], k, &mut north[j..], k);
        }
        for i in 0..n {
            self.apply_strided(
                &south[i * k..],
                &north[i * k..],
                1,
                &mut out[i * n..],
                1,
            );
        }
    }

    /// Same reconstruction with the y sweep first.
    pub fn apply_2d_y_first(&self, corners: [&[f64]; 4], out: &mut [f64], scratch: &mut [f64]) {
        let k = self.m + 1;
        let n = 2 * k;
        let [sw, se, nw, ne] = corners;
        // scratch layout: [side][i (0..k)][j (0..n)]
        let (west, east) = scratch[..2 * n * k].split_at_mut(n * k);
        for i in 0..k {
            self.apply_strided(&sw[i * k..], &nw[i * k..], 1, &mut west[i * n..], 1);
            self.apply_strided(&se[i * k..], &ne[i * k..], 1, &mut east[i * n..], 1);
        }
        for j in 0..n {
            self.apply_strided(&west[j..], &east[j..], n, &mut out[j..], n);
        }
    }
}

/// Columns of the reconstruction matrix from the two-point Taylor basis.
///
/// With `t = xi + 1/2`, the left basis function for datum `l` is
/// `t^l (1 - t)^(m+1) sum_{k <= m-l} C(m+k, k) t^k` and the right one is
/// `(t - 1)^l t^(m+1) sum_{k <= m-l} C(m+k, k) (1 - t)^k`. Expanding them in
/// powers of `xi` only involves dyadic rationals that fit a double, so the
/// entries are exact where an inverted system would lose about
/// `cond * eps`.
fn two_point_basis(m: usize) -> Vec<f64> {
    let n = 2 * m + 2;
    let t = [0.5, 1.0];
    let one_minus_t = [0.5, -1.0];
    let t_minus_one = [-0.5, 1.0];
    let mut matrix = vec![0.0; n * n];
    for l in 0..=m {
        // (column, factor raised to l, factor raised to m + 1, series variable)
        let bases = [
            (l, &t, &one_minus_t, &t),
            (m + 1 + l, &t_minus_one, &t, &one_minus_t),
        ];
        for (col, near, far, var) in bases {
            let mut series = vec![0.0];
            let mut power = vec![1.0];
            for k in 0..=m - l {
                add_scaled(&mut series, &power, binomial(m + k, k));
                power = poly_mul(&power, var);
            }
            let b = poly_mul(&poly_mul(&series, &poly_pow(far, m + 1)), &poly_pow(near, l));
            for (i, c) in b.iter().enumerate().take(n) {
                matrix[i * n + col] = *c;
            }
        }
    }
    matrix
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[f64], e: usize) -> Vec<f64> {
    (0..e).fold(vec![1.0], |acc, _| poly_mul(&acc, a))
}

fn add_scaled(acc: &mut Vec<f64>, p: &[f64], s: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += s * x;
    }
}

/// Builds the reconstruction operator for order `m`.
pub fn build_interp_operator(m: usize) -> Result<InterpOperator> {
    InterpOperator::new(m)
}

/// Extended jet at the midpoint of two nodal jets.
pub fn reconstruct_cell_1d(op: &InterpOperator, left: &Jet, right: &Jet) -> Result<Jet> {
    let k = op.order() + 1;
    for j in [left, right] {
        if j.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                found: j.len(),
            });
        }
    }
    let mut out = Jet::zeros(op.extended_len());
    op.apply(left.coeffs(), right.coeffs(), out.coeffs_mut());
    Ok(out)
}

/// Extended tensor jet at the center of four corner jets, ordered
/// south-west, south-east, north-west, north-east.
pub fn reconstruct_cell_2d(op: &InterpOperator, corners: [&TensorJet; 4]) -> Result<TensorJet> {
    let k = op.order() + 1;
    for c in corners {
        if c.side() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                found: c.side(),
            });
        }
    }
    let n = op.extended_len();
    let mut out = TensorJet::zeros(n);
    let mut scratch = vec![0.0; 2 * n * k];
    op.apply_2d(
        corners.map(|c| c.coeffs()),
        out.coeffs_mut(),
        &mut scratch,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_is_linear_interpolation() {
        let op = InterpOperator::new(0).unwrap();
        let e = reconstruct_cell_1d(
            &op,
            &Jet::from_coeffs(vec![1.0]),
            &Jet::from_coeffs(vec![3.0]),
        )
        .unwrap();
        assert!((e.coeffs()[0] - 2.0).abs() < 1e-15);
        assert!((e.coeffs()[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn constants_reconstruct_to_constants() {
        for m in 0..=MAX_ORDER {
            let op = InterpOperator::new(m).unwrap();
            let mut c = vec![0.0; m + 1];
            c[0] = 2.5;
            let e = reconstruct_cell_1d(
                &op,
                &Jet::from_coeffs(c.clone()),
                &Jet::from_coeffs(c),
            )
            .unwrap();
            assert!((e.coeffs()[0] - 2.5).abs() < 1e-12);
            assert!(e.coeffs()[1..].iter().all(|v| v.abs() < 1e-11), "m = {m}");
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let op = InterpOperator::new(2).unwrap();
        let r = reconstruct_cell_1d(&op, &Jet::zeros(3), &Jet::zeros(2));
        assert!(matches!(r, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn order_cap_is_enforced() {
        assert_eq!(
            InterpOperator::new(MAX_ORDER + 1).err(),
            Some(Error::OrderTooLarge(MAX_ORDER + 1))
        );
    }

    #[test]
    fn conditioning_stays_moderate() {
        for m in 0..=MAX_ORDER {
            let op = InterpOperator::new(m).unwrap();
            assert!(op.condition() < 1e10, "m = {m}: {}", op.condition());
        }
    }
}
