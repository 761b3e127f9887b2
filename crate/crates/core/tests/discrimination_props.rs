use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratefid::discrimination::*;
use ratefid::prob::ProbVector;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn empirical_membership_tracks_grades(
        grades in prop::collection::vec(0.0f64..=1.0, 1..6),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trials: Vec<Vec<u8>> = (0..10_000)
            .map(|_| grades.iter().map(|&g| rng.gen_bool(g) as u8).collect())
            .collect();
        let est = empirical_membership::<f64>(&ClearSetSample::new(trials).unwrap());
        for (e, g) in est.iter().zip(&grades) {
            // five standard errors at n = 10000
            prop_assert!((e - g).abs() < 0.025, "{e} vs {g}");
        }
    }

    #[test]
    fn gaussian_kernel_is_symmetric_and_peaked(b in 1u32..40, d in 0.1f64..20.0) {
        let q = gaussian_membership(&GaussianDiscriminationSpec::new(b, d).unwrap());
        let n = b as usize + 1;
        for j in 0..n {
            prop_assert_eq!(q.grade(j, j), 1.0);
            for i in 0..n {
                prop_assert!((q.grade(j, i) - q.grade(i, j)).abs() < 1e-15);
                prop_assert!(q.grade(j, i) >= 1e-12 && q.grade(j, i) <= 1.0);
                if i + 1 < n && i >= j {
                    prop_assert!(q.grade(j, i + 1) <= q.grade(j, i));
                }
            }
        }
    }

    #[test]
    fn wider_kernels_confuse_more(b in 2u32..30, d in 0.2f64..10.0) {
        let narrow = gaussian_membership(&GaussianDiscriminationSpec::new(b, d).unwrap());
        let wide = gaussian_membership(&GaussianDiscriminationSpec::new(b, 2.0 * d).unwrap());
        for j in 0..=b as usize {
            for i in 0..=b as usize {
                prop_assert!(wide.grade(j, i) >= narrow.grade(j, i));
            }
        }
    }
}

#[test]
fn gray_source_is_symmetric_with_full_support() {
    for k in 1..=8 {
        let p: ProbVector<f64> = gray_level_source(k).unwrap();
        let n = p.len();
        assert_eq!(n, 1 << k);
        assert!(p.first_zero().is_none());
        for i in 0..n {
            assert!((p.get(i) - p.get(n - 1 - i)).abs() < 1e-15);
        }
    }
    assert!(gray_level_source::<f64>(0).is_err());
    assert!(gray_level_source::<f64>(17).is_err());
}

#[test]
fn sample_validation() {
    assert!(ClearSetSample::new(vec![]).is_err());
    assert!(ClearSetSample::new(vec![vec![1, 0], vec![1]]).is_err());
    assert!(ClearSetSample::new(vec![vec![2, 0]]).is_err());
    assert!(GaussianDiscriminationSpec::new(10, -1.0f64).is_err());
}
