use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::interp::InterpOperator;
use crate::linalg::{complex_eigenvalues, numerical_rank, spectral_radius};
use crate::math::{binomial, powi};
use crate::{Error, Result};

use super::rate::least_squares_slope;

/// Fourier symbol of one leapfrog half step in units `h = 1`, `c = 1`,
/// `dt = lambda`: the `(m+1) x (m+1)` matrix mapping a velocity jet mode to
/// the pressure jet increment.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionSymbol {
    pub m: usize,
    pub k: f64,
    pub lambda: f64,
    /// Row-major.
    pub d: Vec<Complex64>,
}

impl DispersionSymbol {
    pub fn size(&self) -> usize {
        self.m + 1
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.d[i * (self.m + 1) + j]
    }

    /// `2 i sin(lambda k / 2)`, the exact increment factor.
    pub fn exact_eigenvalue(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * libm::sin(0.5 * self.lambda * self.k))
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        complex_eigenvalues(&self.d, self.m + 1)
    }
}

/// Assembles the symbol column by column: the unit jet `e_l` on the dual
/// nodes either side of a primary node carries phases `exp(-ik/2)` and
/// `exp(ik/2)`; the reconstruction is followed by the odd-power update
/// `2 sum_j (lambda/2)^j C(j+s, j) v_{j+s}`.
pub fn dispersion_symbol(m: usize, lambda: f64, k: f64) -> Result<DispersionSymbol> {
    let op = InterpOperator::new(m)?;
    let size = m + 1;
    let n = op.extended_len();
    let mat = op.matrix();
    let left = Complex64::from_polar(1.0, -0.5 * k);
    let right = Complex64::from_polar(1.0, 0.5 * k);
    let mut d = vec![Complex64::new(0.0, 0.0); size * size];
    let mut ext = vec![Complex64::new(0.0, 0.0); n];
    for l in 0..size {
        for (i, e) in ext.iter_mut().enumerate() {
            *e = mat[i * n + l] * left + mat[i * n + size + l] * right;
        }
        for s in 0..size {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut j = 1;
            while j + s < n {
                acc += ext[j + s] * (2.0 * powi(0.5 * lambda, j) * binomial(j + s, j));
                j += 2;
            }
            d[s * size + l] = acc;
        }
    }
    Ok(DispersionSymbol { m, k, lambda, d })
}

/// Two-level map on `(P, V)`: `V' = V + D P`, `P' = P + D V'`, as a
/// `2(m+1)` square matrix.
pub fn amplification_matrix(sym: &DispersionSymbol) -> Vec<Complex64> {
    let s = sym.size();
    let n = 2 * s;
    let one = Complex64::new(1.0, 0.0);
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..s {
        for j in 0..s {
            let mut dd = Complex64::new(0.0, 0.0);
            for l in 0..s {
                dd += sym.get(i, l) * sym.get(l, j);
            }
            let id = if i == j { one } else { Complex64::new(0.0, 0.0) };
            a[i * n + j] = id + dd;
            a[i * n + s + j] = sym.get(i, j);
            a[(s + i) * n + j] = sym.get(i, j);
            a[(s + i) * n + s + j] = id;
        }
    }
    a
}

/// Largest spectral radius of the amplification matrix over `ks`.
pub fn amplification_scan(m: usize, lambda: f64, ks: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &k in ks {
        let sym = dispersion_symbol(m, lambda, k)?;
        let a = amplification_matrix(&sym);
        worst = worst.max(spectral_radius(&a, 2 * sym.size())?);
    }
    Ok(worst)
}

/// Relative eigenvalue error against `k` for the branch nearest the exact
/// value.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionScan {
    pub ks: Vec<f64>,
    /// `|kappa - kappa_c| / |kappa_c|` for the nearest eigenvalue.
    pub errors: Vec<f64>,
    /// Same for the second nearest eigenvalue; for odd `m` two eigenvalues
    /// split from a double zero.
    pub second_errors: Vec<f64>,
    /// Indices of the points that entered the fit.
    pub fitted: core::ops::Range<usize>,
    /// Fitted slope of `log errors` against `log k`.
    pub order: f64,
}

/// Absolute eigenvalue errors below this are roundoff; the observed floor
/// is about `2e-16`.
const DISPERSION_FLOOR: f64 = 2e-15;

/// Points per fit, taken at the smallest resolvable `k`.
const FIT_POINTS: usize = 3;

/// Fits the order of the relative eigenvalue error over
/// `k = pi 2^(-i/2)`, `i = 2..16`.
///
/// The absolute error `|kappa - kappa_c|` carries one extra power of `k`
/// since `kappa_c` itself is `O(k)`; dividing by `|kappa_c|` gives the
/// order of the phase error. Going down in `k`, scanning stops at the first
/// point whose absolute error is below the roundoff floor, and the slope is
/// fitted over the last three points before it.
pub fn dispersion_order_scan(m: usize, lambda: f64) -> Result<DispersionScan> {
    let ks: Vec<f64> = (2..=16)
        .map(|i| core::f64::consts::PI * libm::exp2(-0.5 * i as f64))
        .collect();
    let mut errors = Vec::with_capacity(ks.len());
    let mut second_errors = Vec::with_capacity(ks.len());
    let mut resolved = 0;
    for &k in &ks {
        let sym = dispersion_symbol(m, lambda, k)?;
        let exact = sym.exact_eigenvalue();
        let mut dist: Vec<f64> = sym.eigenvalues()?.iter().map(|e| (e - exact).norm()).collect();
        dist.sort_by(|a, b| a.total_cmp(b));
        let nearest = dist[0];
        second_errors.push(dist.get(1).map_or(f64::NAN, |d| d / exact.norm()));
        if nearest >= DISPERSION_FLOOR && resolved == errors.len() {
            resolved += 1;
        }
        errors.push(nearest / exact.norm());
    }
    let fitted = resolved.saturating_sub(FIT_POINTS)..resolved;
    if fitted.len() < FIT_POINTS {
        return Err(Error::InsufficientData {
            usable: fitted.len(),
            required: FIT_POINTS,
        });
    }
    let xs: Vec<f64> = fitted.clone().map(|i| libm::log(ks[i])).collect();
    let ys: Vec<f64> = fitted.clone().map(|i| libm::log(errors[i])).collect();
    let order = least_squares_slope(&xs, &ys);
    Ok(DispersionScan {
        ks,
        errors,
        second_errors,
        fitted,
        order,
    })
}

/// Structure of the zero eigenvalue of the symbol at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroEigenStructure {
    /// Null space spanned by the constant mode and no solution of
    /// `D(0) g = e_1`.
    Simple,
    /// `D(0) g = e_1` is solvable: a generalized eigenvector exists.
    GeneralizedEigenvector,
    /// Null space larger than one dimension.
    Degenerate { nullity: usize },
}

/// Singular values below `1e-9` times the largest count as zero.
pub fn zero_eigen_structure(m: usize, lambda: f64) -> Result<ZeroEigenStructure> {
    const TOL: f64 = 1e-9;
    let sym = dispersion_symbol(m, lambda, 0.0)?;
    let s = sym.size();
    let real: Vec<f64> = sym.d.iter().map(|z| z.re).collect();
    let rank = numerical_rank(&real, s, s, TOL);
    let nullity = s - rank;
    if nullity > 1 {
        return Ok(ZeroEigenStructure::Degenerate { nullity });
    }
    // Augment with e_1 and see whether the rank grows.
    let mut aug = vec![0.0; s * (s + 1)];
    for i in 0..s {
        aug[i * (s + 1)..i * (s + 1) + s].copy_from_slice(&real[i * s..(i + 1) * s]);
    }
    // Scale the extra column like the matrix so the relative threshold is fair.
    let scale = real.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    aug[s] = scale;
    let rank_aug = numerical_rank(&aug, s, s + 1, TOL);
    Ok(if rank_aug > rank {
        ZeroEigenStructure::Simple
    } else {
        ZeroEigenStructure::GeneralizedEigenvector
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_mode_is_in_the_kernel() {
        for m in 0..5 {
            let sym = dispersion_symbol(m, 0.9, 0.0).unwrap();
            for i in 0..=m {
                assert!(sym.get(i, 0).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn order_zero_symbol_is_classic_staggered() {
        // m = 0: M = [[1/2, 1/2], [-1, 1]], D = 2 (lambda/2) (e^{ik/2} - e^{-ik/2}).
        let (lambda, k) = (0.7, 0.9);
        let sym = dispersion_symbol(0, lambda, k).unwrap();
        let expect = Complex64::new(0.0, 2.0 * lambda * libm::sin(0.5 * k));
        assert!((sym.get(0, 0) - expect).norm() < 1e-14);
    }

    #[test]
    fn zero_time_step_is_identity() {
        let r = amplification_scan(2, 0.0, &[-3.0, -1.0, 0.0, 0.5, 3.1]).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }
}
