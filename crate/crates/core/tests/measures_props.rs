mod common;

use common::*;
use proptest::prelude::*;
use ratefid::measures::*;
use ratefid::prob::*;

fn instance() -> impl Strategy<Value = (ProbVector<f64>, MembershipMatrix<f64>, Channel<f64>)> {
    (2usize..6, 2usize..5).prop_flat_map(|(ni, nj)| {
        (prob_vector(ni), fuzzy_membership(nj, ni), channel(ni, nj))
    })
}

fn partition_instance() -> impl Strategy<Value = (ProbVector<f64>, Vec<usize>, usize)> {
    (2usize..7)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| (prob_vector(n), partition(n, k), Just(k)))
}

proptest! {
    #[test]
    fn partition_with_matched_channel_reduces_to_shannon((prior, labels, k) in partition_instance()) {
        let q = clear_sets(&labels, k);
        let dec = info_decomposition(&prior, &matched_channel(&labels, k), &q).unwrap();
        prop_assert!((dec.generalized_mutual_info - dec.shannon_mutual_info).abs() < 1e-9);
    }

    #[test]
    fn decomposition_identities_hold((prior, q, ch) in instance()) {
        let dec = info_decomposition(&prior, &ch, &q).unwrap();
        prop_assert!(dec.identity_residual() < 1e-9, "{dec:?}");
    }

    #[test]
    fn generalized_info_never_exceeds_shannon_term((prior, q, ch) in instance()) {
        // sum_i P(x|y) log Q(x|A)/P(x) <= KL(P(x|y) || P(x))
        let joint = joint_from(&prior, &ch).unwrap();
        for j in 0..q.n_sets() {
            let post = joint.posterior(j).unwrap();
            let gk = generalized_kullback(&post, &prior, &q, j).unwrap();
            let kl: f64 = (0..prior.len())
                .map(|i| post.get(i) * (post.get(i) / prior.get(i)).log2())
                .sum();
            prop_assert!(gk <= kl + 1e-12);
        }
    }

    #[test]
    fn perturbed_forecast_never_helps(
        (prior, q) in (2usize..6, 1usize..4)
            .prop_flat_map(|(ni, nj)| (prob_vector(ni), fuzzy_membership(nj, ni))),
        noise in prop::collection::vec(0.0f64..1.0, 6),
        alpha in 0.01f64..1.0,
    ) {
        let j = 0;
        let post = posterior_given_set(&prior, &q, j).unwrap();
        let base = generalized_kullback_with_forecast(&post, &prior, &post).unwrap();
        let other = ProbVector::normalized(noise[..prior.len()].iter().map(|v| v + 0.01).collect()).unwrap();
        let forecast = post.mix(&other, alpha).unwrap();
        let value = generalized_kullback_with_forecast(&post, &prior, &forecast).unwrap();
        prop_assert!(value <= base + 1e-12, "{value} > {base}");
    }

    #[test]
    fn tautology_carries_no_information(prior in (2usize..6).prop_flat_map(prob_vector)) {
        let n = prior.len();
        let q = MembershipMatrix::new(vec![vec![1.0; n]]).unwrap();
        for i in 0..n {
            prop_assert!(semantic_info(&prior, &q, i, 0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn semantic_info_is_bounded((prior, q, _ch) in instance()) {
        let bound = semantic_info_bound(&prior, &q).unwrap();
        for j in 0..q.n_sets() {
            for i in 0..q.n_symbols() {
                let v = semantic_info(&prior, &q, i, j).unwrap();
                prop_assert!(v.is_finite() && v.abs() <= bound);
            }
        }
    }

    #[test]
    fn logical_probability_is_linear_in_prior(
        (a, b, q) in (2usize..6, 1usize..4)
            .prop_flat_map(|(ni, nj)| (prob_vector(ni), prob_vector(ni), fuzzy_membership(nj, ni))),
        t in 0.0f64..=1.0,
    ) {
        let mix = a.mix(&b, t).unwrap();
        for j in 0..q.n_sets() {
            let lhs = logical_probability(&mix, &q, j).unwrap();
            let rhs = t * logical_probability(&a, &q, j).unwrap()
                + (1.0 - t) * logical_probability(&b, &q, j).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn joint_marginals_are_consistent((prior, _q, ch) in instance()) {
        let joint = joint_from(&prior, &ch).unwrap();
        let back = joint.input_marginal();
        for i in 0..prior.len() {
            prop_assert!((back.get(i) - prior.get(i)).abs() < 1e-12);
        }
        let out = joint.output_marginal();
        prop_assert!((out.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(joint.mutual_information() >= -1e-12);
    }

    #[test]
    fn independent_channel_has_zero_mutual_information(
        (prior, out) in (2usize..6, 2usize..5).prop_flat_map(|(ni, nj)| (prob_vector(ni), prob_vector(nj)))
    ) {
        let ch = Channel::independent(prior.len(), &out).unwrap();
        let joint = joint_from(&prior, &ch).unwrap();
        prop_assert!(joint.mutual_information().abs() < 1e-12);
    }

    #[test]
    fn semantic_info_is_symmetric_under_relabeling((prior, q, _ch) in instance()) {
        // reversing the symbol order in both prior and grades leaves values unchanged
        let n = prior.len();
        let rprior = ProbVector::new(prior.as_slice().iter().rev().copied().collect()).unwrap();
        let rq = MembershipMatrix::new(
            (0..q.n_sets()).map(|j| q.row(j).iter().rev().copied().collect()).collect(),
        )
        .unwrap();
        for j in 0..q.n_sets() {
            for i in 0..n {
                let a = semantic_info(&prior, &q, i, j).unwrap();
                let b = semantic_info(&rprior, &rq, n - 1 - i, j).unwrap();
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn clear_sets_give_hartley_information() {
    let prior = ProbVector::<f64>::uniform(8).unwrap();
    let q = MembershipMatrix::clear_sets(8, &[vec![0, 1]]).unwrap();
    let v = semantic_info(&prior, &q, 0, 0).unwrap();
    assert!((v - hartley_info::<f64>(4).unwrap()).abs() < 1e-12);
    assert!((v - relative_info(8.0, 2.0).unwrap()).abs() < 1e-12);
}

#[test]
fn wrong_dimensions_are_rejected() {
    let prior = ProbVector::<f64>::uniform(3).unwrap();
    let q = MembershipMatrix::identity(2).unwrap();
    let ch = Channel::identity(3).unwrap();
    assert!(info_decomposition(&prior, &ch, &q).is_err());
    assert!(semantic_info(&prior, &q, 0, 0).is_err());
}
