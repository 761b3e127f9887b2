//! Parametric solver shared by the rate-fidelity and rate-distortion curves.
//!
//! For a slope `s` and score table `I_ij` the optimal channel has the form
//! `P(y_j|x_i) = lambda_i q_j 2^(s I_ij)` with `lambda_i = 1 / sum_j q_j 2^(s I_ij)`,
//! where `q` is a fixed point of the alternating update
//! `q_j <- sum_i P(x_i) P(y_j|x_i)`. Equivalently `q` maximizes the concave
//! function `sum_i P(x_i) ln sum_j q_j 2^(s I_ij)` over the simplex.
//!
//! The plain alternating update converges very slowly when the columns of
//! `2^(s I)` are nearly collinear (smooth Gaussian kernels), so by default
//! the maximizer is approached with a log-barrier Newton method first and
//! the fixed-point update is then run until its sup-norm change drops below
//! the tolerance. Only that last test decides `converged`.

use crate::error::{Error, Result};
use crate::linalg::Cholesky;
use crate::measures::InfoMatrix;
use crate::prob::{Channel, ProbVector};
use crate::real::Real;

use super::RatePoint;

/// Largest slope magnitude accepted.
pub const MAX_ABS_SLOPE: f64 = 50.0;

/// Output probabilities below this are reported in `RatePoint::tiny_outputs`.
pub const TINY_OUTPUT: f64 = 1e-15;

/// How the output distribution is driven to its fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Log-barrier Newton polish followed by fixed-point verification.
    #[default]
    InteriorPoint,
    /// Alternating fixed-point update only.
    FixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T> {
    pub method: Method,
    /// Sup-norm change of the output distribution accepted as converged.
    pub tol: T,
    /// Cap on fixed-point iterations.
    pub max_iterations: usize,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            method: Method::InteriorPoint,
            tol: T::lit(T::FIXED_POINT_TOL),
            max_iterations: 100_000,
        }
    }
}

/// Precomputed row-scaled kernel `W_ij = 2^(s I_ij - m_i)`, `m_i = max_j s I_ij`.
struct Kernel<'a, T> {
    prior: &'a [T],
    ni: usize,
    nj: usize,
    w: Vec<T>,
    row_max: Vec<T>,
}

impl<'a, T: Real> Kernel<'a, T> {
    fn new(prior: &'a [T], scores: &InfoMatrix<T>, s: T) -> Self {
        let (ni, nj) = (scores.n_inputs(), scores.n_outputs());
        let mut w = Vec::with_capacity(ni * nj);
        let mut row_max = Vec::with_capacity(ni);
        for i in 0..ni {
            let row = scores.row(i);
            let m = row
                .iter()
                .map(|&v| s * v)
                .fold(T::neg_infinity(), T::max);
            row_max.push(m);
            w.extend(row.iter().map(|&v| (s * v - m).exp2()));
        }
        Self {
            prior,
            ni,
            nj,
            w,
            row_max,
        }
    }

    #[inline]
    fn row(&self, i: usize) -> &[T] {
        &self.w[i * self.nj..(i + 1) * self.nj]
    }

    /// `(W q)_i`, kept strictly positive.
    fn mix(&self, q: &[T]) -> Vec<T> {
        (0..self.ni)
            .map(|i| {
                let v: T = self.row(i).iter().zip(q).map(|(&w, &qj)| w * qj).sum();
                v.max(T::min_positive_value())
            })
            .collect()
    }

    /// `c_j = sum_i P_i W_ij / (W q)_i`; the fixed-point map is `q_j c_j`.
    fn gradient(&self, den: &[T]) -> Vec<T> {
        let mut c = vec![T::zero(); self.nj];
        for i in 0..self.ni {
            let f = self.prior[i] / den[i];
            for (cj, &w) in c.iter_mut().zip(self.row(i)) {
                *cj += f * w;
            }
        }
        c
    }

    fn objective(&self, q: &[T]) -> T {
        self.mix(q)
            .iter()
            .zip(self.prior)
            .map(|(&d, &p)| p * d.ln())
            .sum()
    }

    /// One alternating update; returns the new distribution and the sup-norm change.
    fn fixed_point_step(&self, q: &[T]) -> (Vec<T>, T) {
        let den = self.mix(q);
        let c = self.gradient(&den);
        let mut next: Vec<T> = q.iter().zip(&c).map(|(&qj, &cj)| qj * cj).collect();
        let total: T = next.iter().copied().sum();
        for v in next.iter_mut() {
            *v /= total;
        }
        let change = next
            .iter()
            .zip(q)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max);
        (next, change)
    }
}

/// Maximizes `sum_i P_i ln (W q)_i + mu sum_j ln q_j` on the simplex for a
/// decreasing sequence of `mu`. Returns the number of Newton steps taken.
fn barrier_polish<T: Real>(kernel: &Kernel<'_, T>, q: &mut [T]) -> usize {
    let nj = kernel.nj;
    if nj == 1 {
        q[0] = T::one();
        return 0;
    }
    let start = T::lit(1e-8);
    for v in q.iter_mut() {
        *v = v.max(start);
    }
    normalize(q);

    let mu_end = T::lit(T::BARRIER_END);
    let newton_tol = T::lit(T::FIXED_POINT_TOL * T::FIXED_POINT_TOL);
    let mut mu = T::lit(1e-3);
    let mut steps = 0;
    let mut hess = vec![T::zero(); nj * nj];
    let ones = vec![T::one(); nj];
    loop {
        let phi = |x: &[T]| -> T {
            kernel.objective(x) + mu * x.iter().map(|&v| v.ln()).sum::<T>()
        };
        for _ in 0..100 {
            steps += 1;
            let den = kernel.mix(q);
            let c = kernel.gradient(&den);
            let g: Vec<T> = c.iter().zip(q.iter()).map(|(&cj, &qj)| cj + mu / qj).collect();

            // negated Hessian: W^T diag(P/den^2) W + diag(mu/q^2)
            hess.iter_mut().for_each(|h| *h = T::zero());
            for i in 0..kernel.ni {
                let f = kernel.prior[i] / (den[i] * den[i]);
                let row = kernel.row(i);
                for a in 0..nj {
                    let fa = f * row[a];
                    if fa == T::zero() {
                        continue;
                    }
                    let base = a * nj;
                    for b in a..nj {
                        hess[base + b] += fa * row[b];
                    }
                }
            }
            for a in 0..nj {
                hess[a * nj + a] += mu / (q[a] * q[a]);
                for b in 0..a {
                    hess[a * nj + b] = hess[b * nj + a];
                }
            }
            let Some(chol) = Cholesky::factor(&hess, nj) else {
                break;
            };
            let ga = chol.solve(&g);
            let gb = chol.solve(&ones);
            let nu = ga.iter().copied().sum::<T>() / gb.iter().copied().sum::<T>();
            let dir: Vec<T> = ga.iter().zip(&gb).map(|(&a, &b)| a - nu * b).collect();
            let slope: T = dir.iter().zip(&g).map(|(&d, &gg)| d * gg).sum();
            if !(slope > newton_tol) {
                break;
            }

            let mut t = T::one();
            for (&d, &qj) in dir.iter().zip(q.iter()) {
                if d < T::zero() {
                    t = t.min(T::lit(0.99) * (-qj / d));
                }
            }
            let f0 = phi(q);
            // close to the maximizer a full step cannot overshoot, and the
            // Armijo test drowns in rounding once the gains fall below the
            // resolution of `phi`; that happens along flat optimal faces
            let full_ok = t == T::one() && slope < T::lit(1e-6);
            let mut trial = vec![T::zero(); nj];
            let mut accepted = false;
            for _ in 0..60 {
                for ((x, &qj), &d) in trial.iter_mut().zip(q.iter()).zip(&dir) {
                    *x = qj + t * d;
                }
                if trial.iter().all(|&v| v > T::zero())
                    && (full_ok || phi(&trial) >= f0 + T::lit(0.25) * t * slope)
                {
                    accepted = true;
                    break;
                }
                t *= T::lit(0.5);
            }
            if !accepted {
                break;
            }
            q.copy_from_slice(&trial);
            normalize(q);
        }
        if mu <= mu_end {
            break;
        }
        mu = (mu * T::lit(0.1)).max(mu_end);
    }
    steps
}

/// Which end of the zero-rate segment the `s = 0` point reports.
///
/// At `s = 0` every output distribution is optimal and all of them give zero
/// rate, while the constraint value `sum_j q_j sum_i P_i I_ij` still depends
/// on `q`. The point is taken as the one-sided limit: mass on the columns
/// with the largest expected score (`s -> 0+`) or the smallest (`s -> 0-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ZeroSlope {
    Largest,
    Smallest,
}

fn zero_slope_output<T: Real>(prior: &[T], scores: &InfoMatrix<T>, side: ZeroSlope) -> Vec<T> {
    let nj = scores.n_outputs();
    let mut e = vec![T::zero(); nj];
    for (i, &p) in prior.iter().enumerate() {
        for (ej, &v) in e.iter_mut().zip(scores.row(i)) {
            *ej += p * v;
        }
    }
    let best = match side {
        ZeroSlope::Largest => e.iter().copied().fold(T::neg_infinity(), T::max),
        ZeroSlope::Smallest => e.iter().copied().fold(T::infinity(), T::min),
    };
    let tol = T::lit(1e-12) * best.abs().max(T::one());
    let mut q: Vec<T> = e
        .iter()
        .map(|&v| if (v - best).abs() <= tol { T::one() } else { T::zero() })
        .collect();
    normalize(&mut q);
    q
}

fn normalize<T: Real>(q: &mut [T]) {
    let total: T = q.iter().copied().sum();
    for v in q.iter_mut() {
        *v /= total;
    }
}

/// Solves one point of the parametric curve for score table `scores`.
///
/// `init` is the starting output distribution (uniform when `None`); it is
/// floored slightly so that no output symbol starts at exactly zero, since
/// the fixed-point update can never revive a zero component.
pub(crate) fn solve_parametric<T: Real>(
    prior: &ProbVector<T>,
    scores: &InfoMatrix<T>,
    s: T,
    init: Option<&[T]>,
    zero_side: ZeroSlope,
    opts: &SolverOptions<T>,
) -> Result<RatePoint<T>> {
    if prior.len() != scores.n_inputs() {
        return Err(Error::DimensionMismatch {
            what: "prior vs score rows",
            expected: scores.n_inputs(),
            got: prior.len(),
        });
    }
    if let Some(i) = prior.first_zero() {
        return Err(Error::ZeroSupport { index: i });
    }
    if !s.is_finite() || s.abs() > T::lit(MAX_ABS_SLOPE) {
        return Err(Error::Domain(format!(
            "slope s = {s} outside [-{MAX_ABS_SLOPE}, {MAX_ABS_SLOPE}]"
        )));
    }
    let nj = scores.n_outputs();
    let mut q: Vec<T> = match init {
        Some(v) => {
            if v.len() != nj {
                return Err(Error::DimensionMismatch {
                    what: "initial output distribution",
                    expected: nj,
                    got: v.len(),
                });
            }
            let floor = T::lit(1e-10);
            v.iter().map(|&x| x.max(T::zero()) + floor).collect()
        }
        None => vec![T::one(); nj],
    };
    normalize(&mut q);

    let kernel = Kernel::new(prior.as_slice(), scores, s);
    let newton_steps = if s == T::zero() {
        q = zero_slope_output(prior.as_slice(), scores, zero_side);
        0
    } else {
        match opts.method {
            Method::InteriorPoint => barrier_polish(&kernel, &mut q),
            Method::FixedPoint => 0,
        }
    };

    let mut iterations = 0;
    let mut converged = false;
    let mut last_change = T::infinity();
    while iterations < opts.max_iterations {
        let (next, change) = kernel.fixed_point_step(&q);
        iterations += 1;
        q = next;
        last_change = change;
        if change < opts.tol {
            converged = true;
            break;
        }
    }

    finish(prior, scores, &kernel, s, q, converged, iterations, newton_steps, last_change)
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Real>(
    prior: &ProbVector<T>,
    scores: &InfoMatrix<T>,
    kernel: &Kernel<'_, T>,
    s: T,
    q: Vec<T>,
    converged: bool,
    iterations: usize,
    newton_steps: usize,
    last_change: T,
) -> Result<RatePoint<T>> {
    let (ni, nj) = (kernel.ni, kernel.nj);
    let den = kernel.mix(&q);
    let mut channel = Vec::with_capacity(ni * nj);
    let mut log2_lambda = Vec::with_capacity(ni);
    for i in 0..ni {
        let row = kernel.row(i);
        channel.extend(row.iter().zip(&q).map(|(&w, &qj)| qj * w / den[i]));
        log2_lambda.push(-(kernel.row_max[i] + den[i].log2()));
    }
    let channel = Channel::from_flat(ni, nj, channel)?;
    let g = scores.expectation(prior, &channel);
    // rounding can leave r a hair below zero at s = 0
    let r = (s * g
        + prior
            .as_slice()
            .iter()
            .zip(&log2_lambda)
            .map(|(&p, &l)| p * l)
            .sum::<T>())
    .max(T::zero());
    let tiny = T::lit(TINY_OUTPUT);
    let tiny_outputs = q
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < tiny)
        .map(|(j, _)| j)
        .collect();
    Ok(RatePoint {
        s,
        g,
        r,
        lambda: log2_lambda.iter().map(|&l| l.exp2()).collect(),
        log2_lambda,
        output_dist: ProbVector::new(q)?,
        channel,
        converged,
        iterations,
        newton_steps,
        final_change: last_change,
        tiny_outputs,
    })
}
