#![allow(dead_code)]

use proptest::prelude::*;
use ratefid::prob::{Channel, MembershipMatrix, ProbVector};

pub fn normalize(v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// Full-support distribution on `n` symbols.
pub fn prob_vector(n: usize) -> impl Strategy<Value = ProbVector<f64>> {
    prop::collection::vec(0.02f64..1.0, n).prop_map(|v| ProbVector::new(normalize(v)).unwrap())
}

/// Fuzzy membership with `j` sets over `i` symbols; grades in `[0.01, 1]`.
pub fn fuzzy_membership(j: usize, i: usize) -> impl Strategy<Value = MembershipMatrix<f64>> {
    prop::collection::vec(prop::collection::vec(0.01f64..=1.0, i), j)
        .prop_map(|rows| MembershipMatrix::new(rows).unwrap())
}

pub fn channel(i: usize, j: usize) -> impl Strategy<Value = Channel<f64>> {
    prop::collection::vec(prop::collection::vec(0.01f64..1.0, j), i)
        .prop_map(|rows| Channel::new(rows.into_iter().map(normalize).collect()).unwrap())
}

/// Random partition of `0..n` into `k` nonempty blocks, as a label per symbol.
pub fn partition(n: usize, k: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..k, n - k)
        .prop_map(move |mut rest| {
            let mut labels: Vec<usize> = (0..k).collect();
            labels.append(&mut rest);
            labels
        })
        .prop_shuffle()
}

pub fn clear_sets(labels: &[usize], k: usize) -> MembershipMatrix<f64> {
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|b| (0..labels.len()).filter(|&i| labels[i] == b).collect())
        .collect();
    MembershipMatrix::clear_sets(labels.len(), &sets).unwrap()
}

/// Deterministic channel sending each symbol to its block.
pub fn matched_channel(labels: &[usize], k: usize) -> Channel<f64> {
    Channel::new(
        labels
            .iter()
            .map(|&b| (0..k).map(|j| if j == b { 1.0 } else { 0.0 }).collect())
            .collect(),
    )
    .unwrap()
}

pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}
