use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::InfoMatrix;
use crate::prob::{MembershipMatrix, ProbVector};
use crate::real::{log2_sum_exp2, Real, MEMBERSHIP_FLOOR};

use super::solver::{solve_parametric, SolverOptions, ZeroSlope};
use super::{RateCurve, RatePoint};

/// Source prior, fuzzy sets, and the semantic information table they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityProblem<T> {
    prior: ProbVector<T>,
    membership: MembershipMatrix<T>,
    info: InfoMatrix<T>,
}

impl<T: Real> FidelityProblem<T> {
    /// The prior must have full support.
    pub fn new(prior: ProbVector<T>, membership: MembershipMatrix<T>) -> Result<Self> {
        if let Some(i) = prior.first_zero() {
            return Err(Error::ZeroSupport { index: i });
        }
        let info = InfoMatrix::from_membership(&prior, &membership)?;
        Ok(Self {
            prior,
            membership,
            info,
        })
    }

    pub fn prior(&self) -> &ProbVector<T> {
        &self.prior
    }

    pub fn membership(&self) -> &MembershipMatrix<T> {
        &self.membership
    }

    /// `I_ij = log2(Q(A_j|x_i) / Q(A_j))`.
    pub fn info(&self) -> &InfoMatrix<T> {
        &self.info
    }
}

/// How the points of a curve are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CurveMode {
    /// Serial, each point starting from the previous output distribution.
    #[default]
    WarmStart,
    /// Independent cold starts solved in parallel.
    Parallel,
}

/// Minimum Shannon rate subject to generalized mutual information `G(s)`,
/// at slope `s`. At `s = 0` the point is the right end of the zero-rate
/// segment, i.e. the largest `G` reachable without information.
pub fn rate_fidelity_point<T: Real>(
    problem: &FidelityProblem<T>,
    s: T,
    opts: &SolverOptions<T>,
) -> Result<RatePoint<T>> {
    solve_parametric(&problem.prior, &problem.info, s, None, ZeroSlope::Largest, opts)
}

/// Same as [`rate_fidelity_point`] with an explicit starting output distribution.
pub fn rate_fidelity_point_from<T: Real>(
    problem: &FidelityProblem<T>,
    s: T,
    init: &[T],
    opts: &SolverOptions<T>,
) -> Result<RatePoint<T>> {
    solve_parametric(&problem.prior, &problem.info, s, Some(init), ZeroSlope::Largest, opts)
}

/// Solves every slope of an ascending grid.
pub fn rate_fidelity_curve<T: Real>(
    problem: &FidelityProblem<T>,
    s_grid: &[T],
    mode: CurveMode,
    opts: &SolverOptions<T>,
) -> Result<RateCurve<T>> {
    if s_grid.is_empty() {
        return Err(Error::Empty { what: "s grid" });
    }
    if s_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("s grid must be strictly ascending".into()));
    }
    let points = match mode {
        CurveMode::WarmStart => {
            let mut points: Vec<RatePoint<T>> = Vec::with_capacity(s_grid.len());
            for &s in s_grid {
                let init = points.last().map(|p| p.output_dist.as_slice());
                points.push(solve_parametric(&problem.prior, &problem.info, s, init, ZeroSlope::Largest, opts)?);
            }
            points
        }
        CurveMode::Parallel => s_grid
            .par_iter()
            .map(|&s| rate_fidelity_point(problem, s, opts))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(RateCurve { points })
}

/// 61 slopes over `[-2, 8]`: step 0.2 on `[-2, 0]`, 0.1 on `(0, 2]`,
/// 0.2 on `(2, 8]`.
pub fn default_s_grid<T: Real>() -> Vec<T> {
    let mut grid: Vec<f64> = (0..=10).map(|k| -2.0 + 0.2 * k as f64).collect();
    grid.extend((1..=20).map(|k| 0.1 * k as f64));
    grid.extend((1..=30).map(|k| 2.0 + 0.2 * k as f64));
    // snap to the decimal grid so printed slopes are exact
    grid.into_iter()
        .map(|s| T::lit((s * 10.0).round() / 10.0))
        .collect()
}

/// `log2 Q(B_i|y_j) = s I_ij - log2 m`, `m = max_ij 2^(s I_ij)`.
fn log2_b_grades<T: Real>(point: &RatePoint<T>, info: &InfoMatrix<T>) -> Vec<T> {
    let (ni, nj) = (info.n_inputs(), info.n_outputs());
    let mut v = Vec::with_capacity(ni * nj);
    for i in 0..ni {
        v.extend(info.row(i).iter().map(|&x| point.s * x));
    }
    let m = v.iter().copied().fold(T::neg_infinity(), T::max);
    v.iter_mut().for_each(|x| *x -= m);
    v
}

/// Fuzzy sets `B_i` over the outputs induced by a solved point:
/// `Q(B_i | y_j) = 2^(s I_ij) / m` with `m` the largest such value.
/// Rows are indexed by source symbol `x_i`, columns by output `y_j`.
/// Grades are floored at the membership floor.
pub fn b_set_membership<T: Real>(
    point: &RatePoint<T>,
    problem: &FidelityProblem<T>,
) -> Result<MembershipMatrix<T>> {
    if !point.converged {
        return Err(Error::NotConverged(format!(
            "B sets need a converged point (s = {})",
            point.s
        )));
    }
    let info = &problem.info;
    if point.output_dist.len() != info.n_outputs() {
        return Err(Error::DimensionMismatch {
            what: "rate point outputs vs problem",
            expected: info.n_outputs(),
            got: point.output_dist.len(),
        });
    }
    let floor = T::lit(MEMBERSHIP_FLOOR);
    let data = log2_b_grades(point, info)
        .into_iter()
        .map(|l| l.exp2().max(floor))
        .collect();
    MembershipMatrix::from_flat(info.n_inputs(), info.n_outputs(), data)
}

/// Evaluates the rate as a rate-of-limiting-errors over the `B_i` sets,
/// `sum_i P(x_i) sum_j P(y_j|B_i) log2(Q(B_i|y_j) / Q(B_i))` with
/// `Q(B_i) = sum_j P(y_j) Q(B_i|y_j)` and `P(y_j|B_i)` by Bayes, and returns
/// its absolute difference from the parametric rate `point.r`.
///
/// Everything is computed in the log domain from the point's output
/// distribution, so it does not share the solver's multipliers or channel.
pub fn b_set_rate_residual<T: Real>(
    point: &RatePoint<T>,
    problem: &FidelityProblem<T>,
) -> Result<T> {
    let info = &problem.info;
    if point.output_dist.len() != info.n_outputs() {
        return Err(Error::DimensionMismatch {
            what: "rate point outputs vs problem",
            expected: info.n_outputs(),
            got: point.output_dist.len(),
        });
    }
    let (ni, nj) = (info.n_inputs(), info.n_outputs());
    let lb = log2_b_grades(point, info);
    let py = point.output_dist.as_slice();
    let log_py: Vec<T> = py.iter().map(|&p| p.log2()).collect();
    let mut rate = T::zero();
    for i in 0..ni {
        let row = &lb[i * nj..(i + 1) * nj];
        let terms = (0..nj)
            .filter(|&j| py[j] > T::zero())
            .map(|j| log_py[j] + row[j]);
        let log_qb = log2_sum_exp2(terms);
        let mut acc = T::zero();
        for j in 0..nj {
            if py[j] == T::zero() {
                continue;
            }
            let log_ratio = row[j] - log_qb;
            let post = (log_py[j] + log_ratio).exp2();
            acc += post * log_ratio;
        }
        rate += problem.prior.get(i) * acc;
    }
    Ok((rate - point.r).abs())
}
