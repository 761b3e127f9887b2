//! Invariant suite run by `ratefid verify`.
//!
//! Each check builds its own instances (seeded where random), compares the
//! library against an independent oracle, and reports the worst deviation.
//! Details carry no timings so that the report is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratefid::experiments::{
    fig5_experiment, fig6_experiment, gray_level_problem, Check, DiscriminationScale,
};
use ratefid::measures::{generalized_kullback_with_forecast, info_decomposition};
use ratefid::prob::{
    logical_probabilities, posterior_given_set, Channel, MembershipMatrix, ProbVector,
};
use ratefid::rate::{
    b_set_rate_residual, brute_force_min_rate, default_s_grid, limiting_errors_report,
    rate_distortion_at, rate_fidelity_curve, rate_fidelity_point, CurveMode, DistortionMatrix,
    FidelityProblem, SolverOptions,
};

fn rand_prob(rng: &mut ChaCha8Rng, n: usize) -> ProbVector<f64> {
    ProbVector::normalized((0..n).map(|_| rng.gen_range(0.02..1.0)).collect()).unwrap()
}

fn rand_membership(rng: &mut ChaCha8Rng, sets: usize, n: usize) -> MembershipMatrix<f64> {
    MembershipMatrix::new(
        (0..sets)
            .map(|_| (0..n).map(|_| rng.gen_range(0.01..=1.0)).collect())
            .collect(),
    )
    .unwrap()
}

fn rand_channel(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Channel<f64> {
    Channel::new(
        (0..n)
            .map(|_| rand_prob(rng, m).into_vec())
            .collect(),
    )
    .unwrap()
}

/// Block label per symbol, every block nonempty.
fn rand_partition(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    labels
}

fn partition_sets(labels: &[usize], k: usize) -> MembershipMatrix<f64> {
    let sets: Vec<Vec<usize>> = (0..k)
        .map(|b| (0..labels.len()).filter(|&i| labels[i] == b).collect())
        .collect();
    MembershipMatrix::clear_sets(labels.len(), &sets).unwrap()
}

fn summary(worst: f64, tol: f64, n: usize) -> (bool, String) {
    (
        worst < tol,
        format!("{n} instances, worst deviation {worst:.3e} bits (tolerance {tol:.0e})"),
    )
}

/// Clear partitions with the channel that sends each symbol to its block:
/// generalized and Shannon mutual information coincide.
pub fn reduction_identity(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=n);
        let labels = rand_partition(&mut rng, n, k);
        let prior = rand_prob(&mut rng, n);
        let q = partition_sets(&labels, k);
        let ch = Channel::new(
            labels
                .iter()
                .map(|&b| (0..k).map(|j| if j == b { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
        .unwrap();
        let dec = info_decomposition(&prior, &ch, &q).unwrap();
        worst = worst.max((dec.generalized_mutual_info - dec.shannon_mutual_info).abs());
    }
    let (ok, detail) = summary(worst, 1e-9, 20);
    Check::new("reduction_identity", ok, detail)
}

/// `H(X) - H(X|Y) = H(Y) - H(Y|X)` on random fuzzy instances.
pub fn entropy_decomposition(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0002);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=6);
        let prior = rand_prob(&mut rng, n);
        let q = rand_membership(&mut rng, m, n);
        let ch = rand_channel(&mut rng, n, m);
        let dec = info_decomposition(&prior, &ch, &q).unwrap();
        worst = worst.max(dec.identity_residual());
    }
    let (ok, detail) = summary(worst, 1e-9, 50);
    Check::new("entropy_decomposition", ok, detail)
}

/// Moving the forecast posterior away from the Bayes posterior given the set
/// never raises the information of the message.
pub fn forecast_optimality(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0003);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=4);
        let prior = rand_prob(&mut rng, n);
        let q = rand_membership(&mut rng, m, n);
        let j = rng.gen_range(0..m);
        let post = posterior_given_set(&prior, &q, j).unwrap();
        let best = generalized_kullback_with_forecast(&post, &prior, &post).unwrap();
        for _ in 0..20 {
            let other = rand_prob(&mut rng, n);
            let alpha = rng.gen_range(0.0..1.0);
            let forecast = post.mix(&other, alpha).unwrap();
            let v = generalized_kullback_with_forecast(&post, &prior, &forecast).unwrap();
            worst = worst.max(v - best);
        }
    }
    let ok = worst <= 1e-12;
    Check::new(
        "forecast_optimality",
        ok,
        format!("50 instances x 20 perturbations, largest gain {worst:.3e} bits (allowed 1e-12)"),
    )
}

/// The parametric rate equals the rate-of-limiting-errors of the induced
/// `B` sets along the whole default curve of the 4-bit, `d = 2` image.
pub fn b_set_identity() -> Check {
    let pb = gray_level_problem::<f64>(4, 2.0).unwrap();
    let opts = SolverOptions::default();
    let curve = rate_fidelity_curve(&pb, &default_s_grid(), CurveMode::WarmStart, &opts).unwrap();
    let mut worst = 0.0f64;
    let mut used = 0;
    for p in curve.points.iter().filter(|p| p.converged) {
        worst = worst.max(b_set_rate_residual(p, &pb).unwrap());
        used += 1;
    }
    let (ok, detail) = summary(worst, 1e-8, used);
    Check::new(
        "b_set_rate_identity",
        ok && used == curve.len(),
        format!("{detail}; {used} of {} points converged", curve.len()),
    )
}

/// Hand-built 2x2 instances checked against exhaustive grid search.
pub fn oracle_equivalence() -> Check {
    let cases: [(Vec<f64>, Vec<Vec<f64>>); 3] = [
        (vec![0.5, 0.5], vec![vec![1.0, 0.2], vec![0.2, 1.0]]),
        (vec![0.3, 0.7], vec![vec![1.0, 0.5], vec![0.1, 1.0]]),
        (vec![0.8, 0.2], vec![vec![1.0, 0.0], vec![0.4, 1.0]]),
    ];
    let opts = SolverOptions::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    for (p, rows) in cases {
        let prior = ProbVector::new(p).unwrap();
        let q = MembershipMatrix::new(rows).unwrap();
        let pb = FidelityProblem::new(prior.clone(), q.clone()).unwrap();
        for s in [0.5, 1.0, 2.0] {
            let pt = rate_fidelity_point(&pb, s, &opts).unwrap();
            let brute = brute_force_min_rate(&prior, &q, pt.g, 400).unwrap();
            let dev = brute.map_or(f64::INFINITY, |b| (b - pt.r).abs());
            worst = worst.max(dev);
            n += 1;
        }
    }
    let (ok, detail) = summary(worst, 0.01, n);
    Check::new("oracle_equivalence_2x2", ok, detail.replace("instances", "points"))
}

fn binary_entropy(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Uniform binary source, Hamming distortion: `R(D) = 1 - H_b(D)`.
pub fn binary_rate_distortion() -> Check {
    let prior = ProbVector::new(vec![0.5, 0.5]).unwrap();
    let dist = DistortionMatrix::hamming(2).unwrap();
    let opts = SolverOptions::default();
    let mut worst = 0.0f64;
    for d in [0.05, 0.11, 0.25] {
        let pt = rate_distortion_at(&prior, &dist, d, &opts).unwrap();
        worst = worst.max((pt.r - (1.0 - binary_entropy(d))).abs());
    }
    let (ok, detail) = summary(worst, 1e-4, 3);
    Check::new("binary_rate_distortion", ok, detail.replace("instances", "distortions"))
}

/// With clear partitions the rate-of-limiting-errors equals the generalized
/// entropy `-sum_j P(y_j) log2 Q(A_j)`.
pub fn clear_set_rate_identity(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0009);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=n);
        let labels = rand_partition(&mut rng, n, k);
        let prior = rand_prob(&mut rng, n);
        let q = partition_sets(&labels, k);
        let py = rand_prob(&mut rng, k);
        let rep = limiting_errors_report(&py, &q, &prior).unwrap();
        let qa = logical_probabilities(&prior, &q).unwrap();
        let hy: f64 = (0..k).map(|j| -py.get(j) * qa[j].log2()).sum();
        worst = worst.max((rep.rate - hy).abs());
    }
    let (ok, detail) = summary(worst, 1e-9, 10);
    Check::new("clear_set_rate_identity", ok, detail)
}

/// Qualitative checks of the 6-bit curve family for `d` in `{2, 4, 8}`.
pub fn fig5_suite() -> Vec<Check> {
    let opts = SolverOptions::default();
    match fig5_experiment::<f64>(6, &[2.0, 4.0, 8.0], &default_s_grid(), &opts) {
        Ok(rep) => {
            rep.checks
                .into_iter()
                .map(|c| Check::new(&format!("fig5_{}", c.name), c.passed, c.detail))
                .collect()
        }
        Err(e) => vec![Check::new("fig5", false, e.to_string())],
    }
}

/// Qualitative checks of the matching information for `d = 4`, `k = 1..8`.
pub fn fig6_suite() -> Vec<Check> {
    let opts = SolverOptions::default();
    let ks: Vec<u32> = (1..=8).collect();
    match fig6_experiment::<f64>(4.0, &ks, DiscriminationScale::default(), &opts) {
        Ok(rep) => {
            rep.checks
                .into_iter()
                .map(|c| Check::new(&format!("fig6_{}", c.name), c.passed, c.detail))
                .collect()
        }
        Err(e) => vec![Check::new("fig6", false, e.to_string())],
    }
}

/// Every check, in a fixed order.
pub fn run_suite(seed: u64) -> Vec<Check> {
    let mut out = vec![
        reduction_identity(seed),
        entropy_decomposition(seed),
        forecast_optimality(seed),
        b_set_identity(),
        oracle_equivalence(),
        binary_rate_distortion(),
        clear_set_rate_identity(seed),
    ];
    out.extend(fig5_suite());
    out.extend(fig6_suite());
    out
}
