use crate::error::{Error, Result};
use crate::measures::InfoMatrix;
use crate::prob::ProbVector;
use crate::real::Real;

use super::solver::{solve_parametric, SolverOptions, ZeroSlope, MAX_ABS_SLOPE};
use super::RatePoint;

/// Nonnegative finite distortion table `d(x_i, y_j)`, stored `I x J`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMatrix<T>(InfoMatrix<T>);

impl<T: Real> DistortionMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        if let Some(bad) = rows.iter().flatten().find(|v| !(**v >= T::zero())) {
            return Err(Error::Domain(format!("negative distortion {bad}")));
        }
        Ok(Self(InfoMatrix::from_rows(rows)?))
    }

    /// `d = 0` on the diagonal, `1` elsewhere.
    pub fn hamming(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { T::zero() } else { T::one() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn scores(&self) -> &InfoMatrix<T> {
        &self.0
    }
}

/// Classical rate-distortion point at slope `s <= 0`. The returned point's
/// `g` slot holds the average distortion and `r` the rate. At `s = 0` it is
/// the smallest distortion reachable at zero rate.
pub fn rate_distortion_point<T: Real>(
    prior: &ProbVector<T>,
    distortion: &DistortionMatrix<T>,
    s: T,
    opts: &SolverOptions<T>,
) -> Result<RatePoint<T>> {
    if s > T::zero() {
        return Err(Error::Domain(format!(
            "rate-distortion slope must be <= 0, got {s}"
        )));
    }
    solve_parametric(prior, &distortion.0, s, None, ZeroSlope::Smallest, opts)
}

/// Rate-distortion point whose average distortion equals `target`, found
/// by bisection on the slope. Targets at or above the zero-rate distortion
/// return the `s = 0` point.
pub fn rate_distortion_at<T: Real>(
    prior: &ProbVector<T>,
    distortion: &DistortionMatrix<T>,
    target: T,
    opts: &SolverOptions<T>,
) -> Result<RatePoint<T>> {
    if !(target >= T::zero()) {
        return Err(Error::Domain(format!("target distortion {target} is negative")));
    }
    let hi_pt = rate_distortion_point(prior, distortion, T::zero(), opts)?;
    if target >= hi_pt.g {
        return Ok(hi_pt);
    }
    let mut lo = -T::lit(MAX_ABS_SLOPE);
    let lo_pt = rate_distortion_point(prior, distortion, lo, opts)?;
    if target <= lo_pt.g {
        return Ok(lo_pt);
    }
    let mut hi = T::zero();
    let mut best = lo_pt;
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid == lo || mid == hi {
            break;
        }
        let pt = rate_distortion_point(prior, distortion, mid, opts)?;
        if pt.g < target {
            lo = mid;
        } else {
            hi = mid;
        }
        best = pt;
        if (best.g - target).abs() <= T::epsilon() * T::lit(16.0) {
            break;
        }
    }
    Ok(best)
}
