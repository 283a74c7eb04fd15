use alloc::vec::Vec;

use crate::{Error, Result};

/// Least-squares fit of `log e` against `log h`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub rate: f64,
    /// Number of `(h, e)` pairs that entered the fit.
    pub used: usize,
    /// Indices of pairs dropped for sitting at the roundoff floor or for
    /// being non-finite.
    pub excluded: Vec<usize>,
}

/// Errors below this are treated as roundoff.
const FLOOR: f64 = 100.0 * f64::EPSILON;

/// Slope of `log e` versus `log h` over the usable points.
pub fn convergence_rate(points: &[(f64, f64)]) -> Result<RateFit> {
    let mut excluded = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, &(h, e)) in points.iter().enumerate() {
        if e.is_finite() && h > 0.0 && e >= FLOOR {
            xs.push(libm::log(h));
            ys.push(libm::log(e));
        } else {
            excluded.push(i);
        }
    }
    if xs.len() < 3 {
        return Err(Error::InsufficientData {
            usable: xs.len(),
            required: 3,
        });
    }
    let rate = least_squares_slope(&xs, &ys);
    if rate.is_nan() {
        return Err(Error::InsufficientData {
            usable: 1,
            required: 3,
        });
    }
    Ok(RateFit {
        rate,
        used: xs.len(),
        excluded,
    })
}

/// Least-squares slope of `ys` against `xs`; NaN for fewer than two
/// distinct abscissae.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}
