//! Rate-fidelity and rate-distortion curves, rate-of-limiting-errors, and a
//! brute-force oracle for tiny alphabets.

mod distortion;
mod fidelity;
mod limiting;
mod oracle;
mod solver;

pub use distortion::{rate_distortion_at, rate_distortion_point, DistortionMatrix};
pub use fidelity::{
    rate_fidelity_point_from,
    b_set_membership, default_s_grid, rate_fidelity_curve, rate_fidelity_point,
    b_set_rate_residual, CurveMode, FidelityProblem,
};
pub use limiting::{limiting_errors_report, rate_of_limiting_errors, LimitingErrors};
pub use oracle::{brute_force_min_rate, BRUTE_FORCE_MAX_EVALUATIONS};
pub use solver::{Method, SolverOptions, MAX_ABS_SLOPE, TINY_OUTPUT};

use crate::prob::{joint_from, Channel, ProbVector};
use crate::real::Real;

/// One solved point `(s, G(s), R(s))` of a parametric curve.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePoint<T> {
    /// Slope `dR/dG` at this point.
    pub s: T,
    /// Constraint value achieved: generalized mutual information for the
    /// rate-fidelity curve, average distortion for rate-distortion.
    pub g: T,
    /// Shannon mutual information of the optimal channel, in bits.
    pub r: T,
    /// Multipliers `lambda_i = 1 / sum_j P(y_j) 2^(s I_ij)`.
    pub lambda: Vec<T>,
    /// `log2 lambda_i`, finite even where `lambda_i` over/underflows.
    pub log2_lambda: Vec<T>,
    /// Converged output distribution `P(y_j)`.
    pub output_dist: ProbVector<T>,
    /// Optimal channel `P(y_j | x_i)`.
    pub channel: Channel<T>,
    pub converged: bool,
    /// Fixed-point iterations run.
    pub iterations: usize,
    /// Newton steps of the barrier polish (zero for the plain method).
    pub newton_steps: usize,
    /// Sup-norm change of the last fixed-point iteration.
    pub final_change: T,
    /// Output symbols whose probability ended below [`TINY_OUTPUT`].
    pub tiny_outputs: Vec<usize>,
}

impl<T: Real> RatePoint<T> {
    /// Shannon mutual information of `channel` under `prior`, evaluated
    /// directly rather than through the parametric formula.
    pub fn shannon_rate(&self, prior: &ProbVector<T>) -> T {
        joint_from(prior, &self.channel)
            .map(|j| j.mutual_information())
            .unwrap_or(T::nan())
    }
}

/// Points of a parametric curve ordered by increasing `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateCurve<T> {
    pub points: Vec<RatePoint<T>>,
}

impl<T: Real> RateCurve<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }

    /// Whether the chord from point `k - 1` to `k` has a slope between the
    /// two endpoint values of `s` (relative tolerance `rel`). `None` for
    /// the first point or when the chord is too short to measure.
    pub fn chord_slope_ok(&self, k: usize, rel: T) -> Option<bool> {
        if k == 0 || k >= self.points.len() {
            return None;
        }
        let (a, b) = (&self.points[k - 1], &self.points[k]);
        if !(a.converged && b.converged) {
            return None;
        }
        let dg = b.g - a.g;
        if dg.abs() < T::lit(1e-7) {
            return None;
        }
        let slope = (b.r - a.r) / dg;
        let tol = rel * a.s.abs().max(b.s.abs()) + T::lit(1e-9) / dg.abs();
        Some(slope >= a.s - tol && slope <= b.s + tol)
    }

    /// Describes every violated curve invariant; empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let eps = T::lit(1e-9);
        for w in self.points.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if b.s <= a.s {
                out.push(format!("s not increasing at s = {}", b.s));
            }
            if !(a.converged && b.converged) {
                continue;
            }
            if b.g < a.g - eps {
                out.push(format!("g decreases between s = {} and s = {}", a.s, b.s));
            }
            if a.s >= T::zero() && b.r < a.r - eps {
                out.push(format!("r decreases between s = {} and s = {}", a.s, b.s));
            }
        }
        for k in 1..self.points.len() {
            if self.chord_slope_ok(k, T::lit(1e-3)) == Some(false) {
                out.push(format!(
                    "chord slope outside [{}, {}]",
                    self.points[k - 1].s,
                    self.points[k].s
                ));
            }
        }
        out
    }

    /// Rate at constraint value `g` by linear interpolation between the
    /// first pair of consecutive converged points bracketing it.
    pub fn interpolate_r(&self, g: T) -> Option<T> {
        let pts: Vec<&RatePoint<T>> = self.points.iter().filter(|p| p.converged).collect();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (lo, hi) = if a.g <= b.g { (a, b) } else { (b, a) };
            if g >= lo.g && g <= hi.g {
                if hi.g == lo.g {
                    return Some(lo.r.min(hi.r));
                }
                let t = (g - lo.g) / (hi.g - lo.g);
                return Some(lo.r + t * (hi.r - lo.r));
            }
        }
        None
    }
}
