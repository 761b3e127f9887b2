//! Dense symmetric positive-definite solves for the Newton steps.

use crate::real::Real;

/// Lower Cholesky factor of a row-major `n x n` SPD matrix.
pub(crate) struct Cholesky<T> {
    n: usize,
    l: Vec<T>,
}

impl<T: Real> Cholesky<T> {
    /// Factors `a`, adding diagonal jitter when rounding has made it
    /// indefinite. Returns `None` only if jitter up to `1e-2 * max diag`
    /// does not help.
    pub(crate) fn factor(a: &[T], n: usize) -> Option<Self> {
        let max_diag = (0..n).map(|i| a[i * n + i]).fold(T::zero(), T::max);
        if !(max_diag > T::zero()) {
            return None;
        }
        let mut jitter = T::zero();
        loop {
            if let Some(l) = try_factor(a, n, jitter) {
                return Some(Self { n, l });
            }
            jitter = if jitter == T::zero() {
                max_diag * T::epsilon() * T::lit(16.0)
            } else {
                jitter * T::lit(100.0)
            };
            if jitter > max_diag * T::lit(1e-2) || !jitter.is_finite() {
                return None;
            }
        }
    }

    pub(crate) fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let l = &self.l;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[i * n + k] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[k * n + i] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        y
    }
}

fn try_factor<T: Real>(a: &[T], n: usize, jitter: T) -> Option<Vec<T>> {
    let mut l = vec![T::zero(); n * n];
    for j in 0..n {
        let mut d = a[j * n + j] + jitter;
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if !(d > T::zero()) {
            return None;
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    Some(l)
}
