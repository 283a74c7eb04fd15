//! Dense linear algebra for the small matrices this crate needs
//! (at most `2(2m + 2)` on a side). Row-major storage throughout.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Inverse of a square row-major matrix by Gauss-Jordan elimination with
/// partial pivoting.
pub fn invert(a: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let mut work = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    let scale = a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                work[i * n + col]
                    .abs()
                    .total_cmp(&work[j * n + col].abs())
            })
            .unwrap();
        if work[pivot * n + col].abs() <= f64::EPSILON * scale {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                work.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let d = 1.0 / work[col * n + col];
        for j in 0..n {
            work[col * n + j] *= d;
            inv[col * n + j] *= d;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = work[i * n + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                work[i * n + j] -= f * work[col * n + j];
                inv[i * n + j] -= f * inv[col * n + j];
            }
        }
    }
    Ok(inv)
}

pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1(a: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| a[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Singular values of a `rows x cols` real matrix, descending, by one-sided
/// Jacobi rotations.
pub fn singular_values(a: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    assert_eq!(a.len(), rows * cols);
    // Work on columns.
    let mut c: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i * cols + j]).collect())
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = c[p].iter().map(|x| x * x).sum();
                let beta: f64 = c[q].iter().map(|x| x * x).sum();
                let gamma: f64 = c[p].iter().zip(&c[q]).map(|(x, y)| x * y).sum();
                if gamma.abs() <= 1e-15 * libm::sqrt(alpha * beta) || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let cs = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = cs * t;
                for i in 0..rows {
                    let x = c[p][i];
                    let y = c[q][i];
                    c[p][i] = cs * x - sn * y;
                    c[q][i] = sn * x + cs * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = c
        .iter()
        .map(|col| libm::sqrt(col.iter().map(|x| x * x).sum()))
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank: singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(a: &[f64], rows: usize, cols: usize, rel_tol: f64) -> usize {
    let s = singular_values(a, rows, cols);
    let Some(&max) = s.first() else {
        return 0;
    };
    if max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > rel_tol * max).count()
}

/// Eigenvalues of a general complex matrix: reduction to Hessenberg form
/// followed by the shifted QR iteration.
pub fn complex_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    assert_eq!(a.len(), n * n);
    let mut h = a.to_vec();
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

fn hessenberg(a: &mut [Complex64], n: usize) {
    for m in 1..n.saturating_sub(1) {
        let mut piv = m;
        let mut best = 0.0;
        for i in m..n {
            let v = a[i * n + m - 1].norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if piv != m {
            for j in (m - 1)..n {
                a.swap(piv * n + j, m * n + j);
            }
            for i in 0..n {
                a.swap(i * n + piv, i * n + m);
            }
        }
        let x = a[m * n + m - 1];
        if x.norm() == 0.0 {
            continue;
        }
        for i in m + 1..n {
            let y = a[i * n + m - 1] / x;
            if y.norm() == 0.0 {
                continue;
            }
            for j in (m - 1)..n {
                let t = a[m * n + j];
                a[i * n + j] -= y * t;
            }
            for r in 0..n {
                let t = a[r * n + i];
                a[r * n + m] += y * t;
            }
        }
    }
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rot: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h[0];
            break;
        }
        // Find the start of the unreduced block ending at `hi`.
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1) * n + l - 1].norm() + h[l * n + l].norm();
            let s = if s == 0.0 { norm } else { s };
            if h[l * n + l - 1].norm() <= f64::EPSILON * s {
                h[l * n + l - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi * n + hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > 60 * n {
            return Err(Error::NoConvergence);
        }
        let a = h[(hi - 1) * n + hi - 1];
        let b = h[(hi - 1) * n + hi];
        let c = h[hi * n + hi - 1];
        let d = h[hi * n + hi];
        let mu = if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            d + Complex64::new(c.norm(), 0.0)
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        for i in l..=hi {
            h[i * n + i] -= mu;
        }
        rot.clear();
        for k in l..hi {
            let x = h[k * n + k];
            let y = h[(k + 1) * n + k];
            let r = libm::hypot(x.norm(), y.norm());
            let (cs, sn) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let p = h[k * n + j];
                let q = h[(k + 1) * n + j];
                h[k * n + j] = cs.conj() * p + sn.conj() * q;
                h[(k + 1) * n + j] = -sn * p + cs * q;
            }
            rot.push((cs, sn));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (cs, sn) = rot[idx];
            for i in l..=(k + 1).min(hi) {
                let p = h[i * n + k];
                let q = h[i * n + k + 1];
                h[i * n + k] = p * cs + q * sn;
                h[i * n + k + 1] = -p * sn.conj() + q * cs.conj();
            }
        }
        for i in l..=hi {
            h[i * n + i] += mu;
        }
    }
    Ok(eig)
}

/// Spectral radius of a complex matrix.
pub fn spectral_radius(a: &[Complex64], n: usize) -> Result<f64> {
    Ok(complex_eigenvalues(a, n)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}
