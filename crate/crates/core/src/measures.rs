//! Generalized information measures over fuzzy-set conditions.
//!
//! Every quantity is in bits. Membership grades are floored at
//! [`MEMBERSHIP_FLOOR`] whenever a logarithm is taken, so negative
//! information stays finite. Terms weighted by an exact zero probability
//! contribute zero.

use crate::error::{Error, Result};
use crate::prob::{
    joint_from, logical_probabilities, logical_probability, Channel, JointDistribution,
    MembershipMatrix, ProbVector,
};
use crate::real::{Real, MEMBERSHIP_FLOOR};

/// Information conveyed by one of `n` equiprobable events, `log2 n`.
pub fn hartley_info<T: Real>(n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("hartley_info requires n >= 1".into()));
    }
    Ok(T::lit(n as f64).log2())
}

/// Information from narrowing an extension of size `n1` down to `n2`,
/// `log2(n1 / n2)`. With probabilities this is `log2(p2 / p1)`.
pub fn relative_info<T: Real>(n1: T, n2: T) -> Result<T> {
    if !(n1 > T::zero()) || !(n2 > T::zero()) {
        return Err(Error::Domain(format!(
            "relative_info requires positive arguments, got ({n1}, {n2})"
        )));
    }
    Ok((n1 / n2).log2())
}

/// Semantic information of message `y_j` about symbol `x_i`:
/// `log2(Q(A_j|x_i) / Q(A_j))`. Negative for a misleading message.
pub fn semantic_info<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    let qa = logical_probability(prior, q, j)?;
    if i >= q.n_symbols() {
        return Err(Error::IndexOutOfRange {
            what: "membership columns",
            index: i,
            len: q.n_symbols(),
        });
    }
    Ok((q.floored(j, i) / qa).log2())
}

/// Table of `I(x_i; y_j)` for every symbol/message pair, stored `I x J`
/// (rows are source symbols).
#[derive(Debug, Clone, PartialEq)]
pub struct InfoMatrix<T> {
    n_inputs: usize,
    n_outputs: usize,
    data: Vec<T>,
}

impl<T: Real> InfoMatrix<T> {
    pub fn from_membership(prior: &ProbVector<T>, q: &MembershipMatrix<T>) -> Result<Self> {
        let qa = logical_probabilities(prior, q)?;
        let (ni, nj) = (q.n_symbols(), q.n_sets());
        let mut data = Vec::with_capacity(ni * nj);
        for i in 0..ni {
            for (j, &qa_j) in qa.iter().enumerate() {
                data.push((q.floored(j, i) / qa_j).log2());
            }
        }
        Ok(Self {
            n_inputs: ni,
            n_outputs: nj,
            data,
        })
    }

    /// Wraps an arbitrary score table, e.g. a distortion matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_inputs = rows.len();
        let n_outputs = rows.first().map_or(0, Vec::len);
        if n_inputs == 0 || n_outputs == 0 {
            return Err(Error::Empty {
                what: "score matrix",
            });
        }
        let mut data = Vec::with_capacity(n_inputs * n_outputs);
        for row in rows {
            if row.len() != n_outputs {
                return Err(Error::DimensionMismatch {
                    what: "score matrix row",
                    expected: n_outputs,
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("non-finite score {bad}")));
            }
            data.extend(row);
        }
        Ok(Self {
            n_inputs,
            n_outputs,
            data,
        })
    }

    #[inline]
    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    #[inline]
    pub fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n_outputs + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n_outputs..(i + 1) * self.n_outputs]
    }

    /// Expected score under a channel: `sum_ij P(x_i) P(y_j|x_i) I_ij`.
    pub fn expectation(&self, prior: &ProbVector<T>, channel: &Channel<T>) -> T {
        let mut acc = T::zero();
        for i in 0..self.n_inputs {
            let p = prior.get(i);
            if p == T::zero() {
                continue;
            }
            for j in 0..self.n_outputs {
                let c = channel.get(i, j);
                if c != T::zero() {
                    acc += p * c * self.get(i, j);
                }
            }
        }
        acc
    }
}

fn check_len<T>(what: &'static str, expected: usize, v: &ProbVector<T>) -> Result<()>
where
    T: Real,
{
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            what,
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

/// Generalized Kullback information of message `y_j` in the matched case:
/// `sum_i P(x_i|y_j) log2(Q(x_i|A_j) / Q(x_i))` with `Q(x) = prior` and
/// `Q(x|A_j)` its Bayes posterior given the fuzzy set.
///
/// `posterior` is the sampling distribution `P(x | y_j)`.
pub fn generalized_kullback<T: Real>(
    posterior: &ProbVector<T>,
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    j: usize,
) -> Result<T> {
    check_len("posterior vs membership columns", q.n_symbols(), posterior)?;
    let qa = logical_probability(prior, q, j)?;
    Ok(posterior
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > T::zero())
        .map(|(i, &p)| p * (q.floored(j, i) / qa).log2())
        .sum())
}

/// Generalized Kullback information with explicit forecast distributions:
/// `sum_i P(x_i|y_j) log2(forecast_posterior_i / forecast_marginal_i)`.
///
/// Returns `-inf` if the forecast posterior rules out a symbol that
/// actually occurs.
pub fn generalized_kullback_with_forecast<T: Real>(
    posterior: &ProbVector<T>,
    forecast_marginal: &ProbVector<T>,
    forecast_posterior: &ProbVector<T>,
) -> Result<T> {
    let n = posterior.len();
    check_len("forecast marginal", n, forecast_marginal)?;
    check_len("forecast posterior", n, forecast_posterior)?;
    let mut acc = T::zero();
    for i in 0..n {
        let p = posterior.get(i);
        if p == T::zero() {
            continue;
        }
        let m = forecast_marginal.get(i);
        if m == T::zero() {
            return Err(Error::Domain(format!(
                "forecast marginal is zero at symbol {i} with positive sampling mass"
            )));
        }
        acc += p * (forecast_posterior.get(i) / m).log2();
    }
    Ok(acc)
}

/// Forecast distributions substituted into the logarithms of the
/// decomposition, for the mismatched case.
#[derive(Debug, Clone, PartialEq)]
pub struct Forecast<T> {
    /// Forecast `Q(x)`.
    pub marginal: ProbVector<T>,
    /// Forecast `Q(x | A_j)`, one per set.
    pub posteriors: Vec<ProbVector<T>>,
}

/// The generalized mutual information together with the four entropies it
/// decomposes into, and the Shannon mutual information of the same joint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoDecomposition<T> {
    pub generalized_mutual_info: T,
    /// `H(X) = -sum_i P(x_i) log2 Q(x_i)`.
    pub forecasting_entropy: T,
    /// `H(X|Y) = -sum_ij P(x_i,y_j) log2 Q(x_i|A_j)`.
    pub posterior_forecasting_entropy: T,
    /// `H(Y) = -sum_j P(y_j) log2 Q(A_j)`.
    pub generalized_entropy: T,
    /// `H(Y|X) = -sum_ij P(x_i,y_j) log2 Q(A_j|x_i)`.
    pub fuzzy_entropy: T,
    pub shannon_mutual_info: T,
}

impl<T: Real> InfoDecomposition<T> {
    /// Largest violation of the two decomposition identities.
    pub fn identity_residual(&self) -> T {
        let a = (self.generalized_mutual_info
            - (self.forecasting_entropy - self.posterior_forecasting_entropy))
            .abs();
        let b = (self.generalized_mutual_info - (self.generalized_entropy - self.fuzzy_entropy))
            .abs();
        a.max(b)
    }
}

/// Decomposition in the matched-forecast case: `Q(x) = prior` and
/// `Q(x|A_j)` is the Bayes posterior given set `A_j`.
pub fn info_decomposition<T: Real>(
    prior: &ProbVector<T>,
    channel: &Channel<T>,
    q: &MembershipMatrix<T>,
) -> Result<InfoDecomposition<T>> {
    decompose(prior, channel, q, None)
}

/// Decomposition with explicit forecasts in the `H(X)` and `H(X|Y)` terms.
/// The generalized mutual information is then `H(X) - H(X|Y)`; the
/// `H(Y) - H(Y|X)` identity only holds when the forecasts are matched.
pub fn info_decomposition_with_forecast<T: Real>(
    prior: &ProbVector<T>,
    channel: &Channel<T>,
    q: &MembershipMatrix<T>,
    forecast: &Forecast<T>,
) -> Result<InfoDecomposition<T>> {
    check_len("forecast marginal", prior.len(), &forecast.marginal)?;
    if forecast.posteriors.len() != q.n_sets() {
        return Err(Error::DimensionMismatch {
            what: "forecast posteriors vs sets",
            expected: q.n_sets(),
            got: forecast.posteriors.len(),
        });
    }
    for p in &forecast.posteriors {
        check_len("forecast posterior", prior.len(), p)?;
    }
    decompose(prior, channel, q, Some(forecast))
}

fn decompose<T: Real>(
    prior: &ProbVector<T>,
    channel: &Channel<T>,
    q: &MembershipMatrix<T>,
    forecast: Option<&Forecast<T>>,
) -> Result<InfoDecomposition<T>> {
    if channel.n_outputs() != q.n_sets() {
        return Err(Error::DimensionMismatch {
            what: "channel outputs vs membership rows",
            expected: q.n_sets(),
            got: channel.n_outputs(),
        });
    }
    if prior.len() != q.n_symbols() {
        return Err(Error::DimensionMismatch {
            what: "prior vs membership columns",
            expected: q.n_symbols(),
            got: prior.len(),
        });
    }
    let joint: JointDistribution<T> = joint_from(prior, channel)?;
    let py = joint.output_marginal();
    let qa = logical_probabilities(prior, q)?;
    let (ni, nj) = (q.n_symbols(), q.n_sets());

    // log2 Q(x_i) and log2 Q(x_i|A_j); matched case uses Bayes with the
    // floored grade so that both identities hold term by term.
    let log_fx = |i: usize| -> T {
        match forecast {
            Some(f) => f.marginal.get(i).log2(),
            None => prior.get(i).log2(),
        }
    };
    let log_fxa = |i: usize, j: usize| -> T {
        match forecast {
            Some(f) => f.posteriors[j].get(i).log2(),
            None => prior.get(i).log2() + q.floored(j, i).log2() - qa[j].log2(),
        }
    };

    let mut hx = T::zero();
    for i in 0..ni {
        let p = prior.get(i);
        if p > T::zero() {
            hx -= p * log_fx(i);
        }
    }
    let mut hy = T::zero();
    for j in 0..nj {
        let p = py.get(j);
        if p > T::zero() {
            hy -= p * qa[j].log2();
        }
    }
    let mut hxy = T::zero();
    let mut hyx = T::zero();
    let mut gmi = T::zero();
    for i in 0..ni {
        for j in 0..nj {
            let p = joint.get(i, j);
            if p == T::zero() {
                continue;
            }
            let lfxa = log_fxa(i, j);
            hxy -= p * lfxa;
            hyx -= p * q.floored(j, i).log2();
            gmi += p * (lfxa - log_fx(i));
        }
    }
    Ok(InfoDecomposition {
        generalized_mutual_info: gmi,
        forecasting_entropy: hx,
        posterior_forecasting_entropy: hxy,
        generalized_entropy: hy,
        fuzzy_entropy: hyx,
        shannon_mutual_info: joint.mutual_information(),
    })
}

/// Upper bound on `|semantic_info|` implied by the membership floor.
pub fn semantic_info_bound<T: Real>(prior: &ProbVector<T>, q: &MembershipMatrix<T>) -> Result<T> {
    let qa = logical_probabilities(prior, q)?;
    let min_qa = qa.iter().copied().fold(T::infinity(), T::min);
    Ok(T::lit(MEMBERSHIP_FLOOR).recip().log2() + min_qa.recip().log2())
}
