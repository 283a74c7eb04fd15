//! Small scalar helpers that `core` does not provide.

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `n! / (n - k)!`, the falling factorial.
pub(crate) fn falling(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

pub(crate) fn powi(x: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Euclidean remainder for periodic index arithmetic.
pub(crate) fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// `d^n/dx^n sin(x)`.
pub(crate) fn sin_derivative(x: f64, n: usize) -> f64 {
    match n % 4 {
        0 => libm::sin(x),
        1 => libm::cos(x),
        2 => -libm::sin(x),
        _ => -libm::cos(x),
    }
}

/// `d^n/dx^n cos(x)`.
pub(crate) fn cos_derivative(x: f64, n: usize) -> f64 {
    sin_derivative(x, n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(17), 355687428096000.0);
        assert_eq!(binomial(7, 3), 35.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(falling(5, 2), 20.0);
        assert_eq!(wrap(-1, 5), 4);
    }
}

/// Dot product accumulated in doubled working precision (TwoSum plus
/// Dekker's TwoProduct), so cancellation between large terms costs no
/// accuracy beyond the final rounding.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Dot2 {
    sum: f64,
    err: f64,
}

impl Dot2 {
    #[inline(always)]
    pub(crate) fn add(&mut self, a: f64, b: f64) {
        let (p, pe) = two_product(a, b);
        let s = self.sum + p;
        let z = s - self.sum;
        let se = (self.sum - (s - z)) + (p - z);
        self.sum = s;
        self.err += pe + se;
    }

    #[inline(always)]
    pub(crate) fn value(self) -> f64 {
        self.sum + self.err
    }
}

#[inline(always)]
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline(always)]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}
