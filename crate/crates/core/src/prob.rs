//! Probability containers over finite indexed alphabets and the Bayesian
//! transforms between them.
//!
//! All containers validate on construction and are immutable afterwards.

use crate::error::{Error, Result};
use crate::real::Real;

/// Whether a constructor should rescale its input to sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Reject inputs whose sum is off by more than the scalar's tolerance.
    Strict,
    /// Divide by the sum first (the sum must be positive and finite).
    Renormalize,
}

fn check_nonneg<T: Real>(v: &[T]) -> Result<()> {
    for (i, &p) in v.iter().enumerate() {
        if !(p >= T::zero()) || !p.is_finite() {
            return Err(Error::InvalidProbability {
                index: i,
                value: p.as_f64(),
            });
        }
    }
    Ok(())
}

fn check_sum<T: Real>(v: &[T]) -> Result<()> {
    let sum: T = v.iter().copied().sum();
    if (sum - T::one()).abs() > T::lit(T::SUM_TOL) {
        return Err(Error::NotNormalized { sum: sum.as_f64() });
    }
    Ok(())
}

/// A discrete probability distribution over `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector<T> {
    probs: Vec<T>,
}

impl<T: Real> ProbVector<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        Self::with_normalization(probs, Normalization::Strict)
    }

    /// Builds a distribution from nonnegative weights by dividing by their sum.
    pub fn normalized(weights: Vec<T>) -> Result<Self> {
        Self::with_normalization(weights, Normalization::Renormalize)
    }

    pub fn with_normalization(mut probs: Vec<T>, mode: Normalization) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty {
                what: "probability vector",
            });
        }
        check_nonneg(&probs)?;
        if mode == Normalization::Renormalize {
            let sum: T = probs.iter().copied().sum();
            if !(sum > T::zero()) || !sum.is_finite() {
                return Err(Error::NotNormalized { sum: sum.as_f64() });
            }
            for p in probs.iter_mut() {
                *p /= sum;
            }
        }
        check_sum(&probs)?;
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty {
                what: "probability vector",
            });
        }
        Ok(Self {
            probs: vec![T::one() / T::lit(n as f64); n],
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, i: usize) -> T {
        self.probs[i]
    }

    pub fn into_vec(self) -> Vec<T> {
        self.probs
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> T {
        -self
            .probs
            .iter()
            .map(|&p| crate::real::xlog2y(p, p))
            .sum::<T>()
    }

    /// Returns the first index with zero mass, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.probs.iter().position(|&p| p == T::zero())
    }

    /// Convex combination `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, other: &Self, alpha: T) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                what: "mixture components",
                expected: self.len(),
                got: other.len(),
            });
        }
        let v = self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(&a, &b)| alpha * a + (T::one() - alpha) * b)
            .collect();
        Self::new(v)
    }
}

/// Membership grades `Q(A_j | x_i)`: one row per fuzzy set (message), one
/// column per source symbol. A clear set is a row of zeros and ones.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> MembershipMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let (r, c, data) = flatten(rows, "membership matrix")?;
        Self::from_flat(r, c, data)
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty {
                what: "membership matrix",
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "membership matrix storage",
                expected: rows * cols,
                got: data.len(),
            });
        }
        let floor = T::lit(crate::real::MEMBERSHIP_FLOOR);
        for j in 0..rows {
            let row = &data[j * cols..(j + 1) * cols];
            for (i, &v) in row.iter().enumerate() {
                if !(v >= T::zero() && v <= T::one()) {
                    return Err(Error::MembershipOutOfRange {
                        row: j,
                        col: i,
                        value: v.as_f64(),
                    });
                }
            }
            if !row.iter().any(|&v| v >= floor) {
                return Err(Error::EmptyMembershipRow { row: j });
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Clear sets given as index lists over an alphabet of `cols` symbols.
    pub fn clear_sets(cols: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut data = vec![T::zero(); sets.len() * cols];
        for (j, set) in sets.iter().enumerate() {
            for &i in set {
                if i >= cols {
                    return Err(Error::IndexOutOfRange {
                        what: "clear set member",
                        index: i,
                        len: cols,
                    });
                }
                data[j * cols + i] = T::one();
            }
        }
        Self::from_flat(sets.len(), cols, data)
    }

    /// `n` disjoint singleton sets, i.e. the identity matrix.
    pub fn identity(n: usize) -> Result<Self> {
        let sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        Self::clear_sets(n, &sets)
    }

    /// Number of sets (messages).
    #[inline]
    pub fn n_sets(&self) -> usize {
        self.rows
    }

    /// Number of source symbols.
    #[inline]
    pub fn n_symbols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn grade(&self, j: usize, i: usize) -> T {
        self.data[j * self.cols + i]
    }

    /// Grade floored at the membership floor, safe to take logs of.
    #[inline]
    pub fn floored(&self, j: usize, i: usize) -> T {
        self.grade(j, i).max(T::lit(crate::real::MEMBERSHIP_FLOOR))
    }

    #[inline]
    pub fn row(&self, j: usize) -> &[T] {
        &self.data[j * self.cols..(j + 1) * self.cols]
    }

    pub fn is_binary(&self) -> bool {
        self.data
            .iter()
            .all(|&v| v == T::zero() || v == T::one())
    }
}

/// Conditional distribution `P(y_j | x_i)`; row `i` is a distribution over outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Channel<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let (r, c, data) = flatten(rows, "channel")?;
        Self::from_flat(r, c, data)
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty { what: "channel" });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "channel storage",
                expected: rows * cols,
                got: data.len(),
            });
        }
        for i in 0..rows {
            let row = &data[i * cols..(i + 1) * cols];
            check_nonneg(row)?;
            check_sum(row)?;
        }
        Ok(Self { rows, cols, data })
    }

    /// Noiseless channel `y = x`.
    pub fn identity(n: usize) -> Result<Self> {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self::from_flat(n, n, data)
    }

    /// Channel whose every row equals `output`, so `Y` is independent of `X`.
    pub fn independent(n_inputs: usize, output: &ProbVector<T>) -> Result<Self> {
        let data = (0..n_inputs)
            .flat_map(|_| output.as_slice().iter().copied())
            .collect();
        Self::from_flat(n_inputs, output.len(), data)
    }

    #[inline]
    pub fn n_inputs(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_outputs(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

/// Joint distribution `P(x_i, y_j)`, stored `I x J`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let (r, c, data) = flatten(rows, "joint distribution")?;
        Self::from_flat(r, c, data)
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty {
                what: "joint distribution",
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "joint distribution storage",
                expected: rows * cols,
                got: data.len(),
            });
        }
        check_nonneg(&data)?;
        check_sum(&data)?;
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn n_inputs(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_outputs(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    /// Row sums, `P(x_i)`.
    pub fn input_marginal(&self) -> ProbVector<T> {
        let v = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().copied().sum())
            .collect();
        ProbVector { probs: v }
    }

    /// Column sums, `P(y_j)`.
    pub fn output_marginal(&self) -> ProbVector<T> {
        output_marginal(self)
    }

    /// Sampling posterior `P(x | y_j)`; `None` when `P(y_j) = 0`.
    pub fn posterior(&self, j: usize) -> Option<ProbVector<T>> {
        let col: Vec<T> = (0..self.rows).map(|i| self.get(i, j)).collect();
        let total: T = col.iter().copied().sum();
        if total > T::zero() {
            Some(ProbVector {
                probs: col.into_iter().map(|p| p / total).collect(),
            })
        } else {
            None
        }
    }

    /// Shannon mutual information in bits.
    pub fn mutual_information(&self) -> T {
        let px = self.input_marginal();
        let py = self.output_marginal();
        let mut acc = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p > T::zero() {
                    acc += p * (p / (px.get(i) * py.get(j))).log2();
                }
            }
        }
        acc
    }
}

fn flatten<T: Copy>(rows: Vec<Vec<T>>, what: &'static str) -> Result<(usize, usize, Vec<T>)> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        if row.len() != c {
            return Err(Error::DimensionMismatch {
                what,
                expected: c,
                got: row.len(),
            });
        }
        data.extend(row);
    }
    Ok((r, c, data))
}

fn check_set_index<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    j: usize,
) -> Result<()> {
    if prior.len() != q.n_symbols() {
        return Err(Error::DimensionMismatch {
            what: "prior vs membership columns",
            expected: q.n_symbols(),
            got: prior.len(),
        });
    }
    if j >= q.n_sets() {
        return Err(Error::IndexOutOfRange {
            what: "membership rows",
            index: j,
            len: q.n_sets(),
        });
    }
    Ok(())
}

/// Logical probability `Q(A_j) = sum_i P(x_i) Q(A_j | x_i)`.
pub fn logical_probability<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    j: usize,
) -> Result<T> {
    check_set_index(prior, q, j)?;
    let v: T = prior
        .as_slice()
        .iter()
        .zip(q.row(j))
        .map(|(&p, &m)| p * m)
        .sum();
    if v < T::lit(1e-300) {
        return Err(Error::DegenerateSet {
            row: j,
            value: v.as_f64(),
        });
    }
    Ok(v)
}

/// Logical probabilities of every set.
pub fn logical_probabilities<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
) -> Result<Vec<T>> {
    (0..q.n_sets())
        .map(|j| logical_probability(prior, q, j))
        .collect()
}

/// Bayes posterior with a (fuzzy) set as condition:
/// `P(x_i | A_j) = Q(A_j | x_i) P(x_i) / Q(A_j)`.
pub fn posterior_given_set<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    j: usize,
) -> Result<ProbVector<T>> {
    let qa = logical_probability(prior, q, j)?;
    let v: Vec<T> = prior
        .as_slice()
        .iter()
        .zip(q.row(j))
        .map(|(&p, &m)| p * m / qa)
        .collect();
    ProbVector::normalized(v)
}

/// `P(x_i, y_j) = P(x_i) P(y_j | x_i)`.
pub fn joint_from<T: Real>(
    prior: &ProbVector<T>,
    channel: &Channel<T>,
) -> Result<JointDistribution<T>> {
    if prior.len() != channel.n_inputs() {
        return Err(Error::DimensionMismatch {
            what: "prior vs channel rows",
            expected: channel.n_inputs(),
            got: prior.len(),
        });
    }
    let data = (0..channel.n_inputs())
        .flat_map(|i| {
            let p = prior.get(i);
            channel.row(i).iter().map(move |&c| p * c)
        })
        .collect();
    Ok(JointDistribution {
        rows: channel.n_inputs(),
        cols: channel.n_outputs(),
        data,
    })
}

/// Column sums of a joint distribution.
pub fn output_marginal<T: Real>(joint: &JointDistribution<T>) -> ProbVector<T> {
    let v = (0..joint.cols)
        .map(|j| (0..joint.rows).map(|i| joint.get(i, j)).sum())
        .collect();
    ProbVector { probs: v }
}
