//! Rate-of-limiting-errors against exhaustive search over 2x2 joint
//! distributions satisfying the fuzzy error-limiting conditions.

mod common;

use common::*;
use proptest::prelude::*;
use ratefid::measures::info_decomposition;
use ratefid::prob::*;
use ratefid::rate::*;

/// Smallest Shannon MI over channels `P(x|y)` whose input marginal matches
/// `prior_x` (within `marginal_tol`) and whose generalized mutual
/// information reaches `g_min`.
fn grid_min_mi(
    source_y: &ProbVector<f64>,
    q: &MembershipMatrix<f64>,
    prior_x: &ProbVector<f64>,
    g_min: f64,
    steps: usize,
    marginal_tol: f64,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    for a in 0..=steps {
        for b in 0..=steps {
            // rows: P(x | y_0) = (a, 1-a), P(x | y_1) = (b, 1-b)
            let (pa, pb) = (a as f64 / steps as f64, b as f64 / steps as f64);
            let px0 = source_y.get(0) * pa + source_y.get(1) * pb;
            if (px0 - prior_x.get(0)).abs() > marginal_tol {
                continue;
            }
            // same joint written as P(y|x) for the decomposition
            let px = ProbVector::normalized(vec![px0, 1.0 - px0]).unwrap();
            let joint = [
                [source_y.get(0) * pa, source_y.get(1) * pb],
                [source_y.get(0) * (1.0 - pa), source_y.get(1) * (1.0 - pb)],
            ];
            let ch = Channel::new(
                (0..2)
                    .map(|i| {
                        let m = joint[i][0] + joint[i][1];
                        if m > 0.0 {
                            vec![joint[i][0] / m, joint[i][1] / m]
                        } else {
                            vec![0.5, 0.5]
                        }
                    })
                    .collect(),
            )
            .unwrap();
            let Ok(dec) = info_decomposition(&px, &ch, q) else {
                continue;
            };
            if dec.generalized_mutual_info + 1e-12 < g_min {
                continue;
            }
            let mi = dec.shannon_mutual_info;
            best = Some(best.map_or(mi, |v: f64| v.min(mi)));
        }
    }
    best
}

#[test]
fn limiting_rate_is_the_grid_minimum() {
    let cases = [
        (vec![0.5, 0.5], vec![vec![1.0, 0.2], vec![0.2, 1.0]]),
        (vec![0.3, 0.7], vec![vec![1.0, 0.5], vec![0.1, 1.0]]),
        (vec![0.6, 0.4], vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
    ];
    for (px, rows) in cases {
        let prior_x = ProbVector::new(px).unwrap();
        let q = MembershipMatrix::new(rows).unwrap();
        // P(y) such that the forecast posteriors reproduce prior_x
        let posts: Vec<ProbVector<f64>> =
            (0..2).map(|j| posterior_given_set(&prior_x, &q, j).unwrap()).collect();
        let (a, b) = (posts[0].get(0), posts[1].get(0));
        let w = (prior_x.get(0) - b) / (a - b);
        let source_y = ProbVector::new(vec![w, 1.0 - w]).unwrap();
        let rep = limiting_errors_report(&source_y, &q, &prior_x).unwrap();
        let brute = grid_min_mi(&source_y, &q, &prior_x, rep.rate - 0.005, 400, 2e-3)
            .expect("forecast channel lies on the grid tolerance band");
        assert!(
            (brute - rep.rate).abs() < 0.01,
            "grid {brute} vs limiting rate {}",
            rep.rate
        );
    }
}

proptest! {
    #[test]
    fn clear_partitions_reach_generalized_entropy(
        (prior, labels, k, py) in (2usize..7)
            .prop_flat_map(|n| (Just(n), 1..=n))
            .prop_flat_map(|(n, k)| (prob_vector(n), partition(n, k), Just(k), prob_vector(k)))
    ) {
        let q = clear_sets(&labels, k);
        let rep = limiting_errors_report(&py, &q, &prior).unwrap();
        let qa = logical_probabilities(&prior, &q).unwrap();
        let hy: f64 = (0..k).map(|j| -py.get(j) * qa[j].log2()).sum();
        prop_assert!((rep.rate - hy).abs() < 1e-9);
        prop_assert!(rep.residual.abs() < 1e-9);
    }

    #[test]
    fn fuzziness_only_lowers_the_rate(
        (prior, q, py) in (2usize..6, 1usize..4)
            .prop_flat_map(|(ni, nj)| (prob_vector(ni), fuzzy_membership(nj, ni), prob_vector(nj)))
    ) {
        let rep = limiting_errors_report(&py, &q, &prior).unwrap();
        prop_assert!(rep.rate >= -1e-12);
        prop_assert!(rep.residual >= -1e-12);
    }
}
