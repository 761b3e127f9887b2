use crate::error::{Error, Result};
use crate::prob::{logical_probabilities, MembershipMatrix, ProbVector};
use crate::real::Real;

/// Rate-of-limiting-errors together with the generalized entropy it is
/// bounded by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingErrors<T> {
    /// `R = sum_j P(y_j) sum_i Q(x_i|A_j) log2(Q(A_j|x_i) / Q(A_j))`.
    pub rate: T,
    /// `H(Y) = -sum_j P(y_j) log2 Q(A_j)`.
    pub generalized_entropy: T,
    /// `H(Y) - R`; zero for clear sets, positive when the sets are fuzzy.
    pub residual: T,
}

/// Minimum rate for encoding source `Y` into `X` when message `y_j` may be
/// reproduced by any symbol of (fuzzy) set `A_j`.
///
/// `q` has one row per `y_j` and one column per `x_i`; `Q(A_j)` and the
/// posteriors `Q(x_i|A_j)` are taken under `prior_x`.
pub fn rate_of_limiting_errors<T: Real>(
    source_y: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    prior_x: &ProbVector<T>,
) -> Result<T> {
    Ok(limiting_errors_report(source_y, q, prior_x)?.rate)
}

pub fn limiting_errors_report<T: Real>(
    source_y: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    prior_x: &ProbVector<T>,
) -> Result<LimitingErrors<T>> {
    if source_y.len() != q.n_sets() {
        return Err(Error::DimensionMismatch {
            what: "source_y vs membership rows",
            expected: q.n_sets(),
            got: source_y.len(),
        });
    }
    let qa = logical_probabilities(prior_x, q)?;
    let mut rate = T::zero();
    let mut hy = T::zero();
    for (j, &qa_j) in qa.iter().enumerate() {
        let py = source_y.get(j);
        if py == T::zero() {
            continue;
        }
        hy -= py * qa_j.log2();
        let mut inner = T::zero();
        for i in 0..q.n_symbols() {
            let grade = q.grade(j, i);
            let post = grade * prior_x.get(i) / qa_j;
            if post > T::zero() {
                inner += post * (grade / qa_j).log2();
            }
        }
        rate += py * inner;
    }
    Ok(LimitingErrors {
        rate,
        generalized_entropy: hy,
        residual: hy - rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clear_partition_equals_generalized_entropy() {
        let q = MembershipMatrix::clear_sets(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let px = ProbVector::new(vec![0.25f64; 4]).unwrap();
        let py = ProbVector::new(vec![0.5, 0.5]).unwrap();
        let rep = limiting_errors_report(&py, &q, &px).unwrap();
        assert!((rep.rate - 1.0).abs() < 1e-12);
        assert!(rep.residual.abs() < 1e-12);
    }

    #[test]
    fn tautologies_need_no_rate() {
        let q = MembershipMatrix::new(vec![vec![1.0f64; 3]; 2]).unwrap();
        let px = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let py = ProbVector::new(vec![0.4, 0.6]).unwrap();
        assert_eq!(rate_of_limiting_errors(&py, &q, &px).unwrap(), 0.0);
    }

    #[test]
    fn fuzzy_sets_fall_below_generalized_entropy() {
        let q = MembershipMatrix::new(vec![vec![1.0f64, 0.3], vec![0.3, 1.0]]).unwrap();
        let px = ProbVector::new(vec![0.5, 0.5]).unwrap();
        let py = ProbVector::new(vec![0.5, 0.5]).unwrap();
        let rep = limiting_errors_report(&py, &q, &px).unwrap();
        assert!(rep.rate > 0.0 && rep.residual > 0.0);
    }

    #[test]
    fn rejects_mismatch_and_degenerate_sets() {
        let q = MembershipMatrix::clear_sets(2, &[vec![0], vec![1]]).unwrap();
        let px = ProbVector::new(vec![1.0, 0.0]).unwrap();
        let py = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            rate_of_limiting_errors(&py, &q, &px),
            Err(Error::DegenerateSet { row: 1, .. })
        ));
        let py3 = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let px = ProbVector::new(vec![0.5, 0.5]).unwrap();
        assert!(rate_of_limiting_errors(&py3, &q, &px).is_err());
    }
}
