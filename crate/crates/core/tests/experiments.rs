use ratefid::experiments::*;
use ratefid::rate::{default_s_grid, SolverOptions};

#[test]
fn small_fig5_family() {
    let report =
        fig5_experiment::<f64>(4, &[1.0, 2.0, 4.0], &default_s_grid(), &SolverOptions::default())
            .unwrap();
    for c in &report.checks {
        assert!(c.passed, "{c:?}");
    }
    let rows = report.rows();
    assert_eq!(rows.len(), 3 * 61);
    assert_eq!(rows[0].d, 1.0);
    assert_eq!(rows[61].d, 2.0);
    for c in &report.curves {
        let m = c.matching;
        assert!(m.gap >= -1e-9 && (m.r_star - m.g_star - m.gap).abs() < 1e-12);
        assert!((m.s_star - 1.0).abs() < 1e-3, "{m:?}");
    }
}

#[test]
fn fig6_knee_moves_up_for_sharper_vision() {
    let opts = SolverOptions::default();
    let ks: Vec<u32> = (1..=6).collect();
    let sharp = fig6_experiment::<f64>(1.0, &ks, DiscriminationScale::default(), &opts).unwrap();
    let blunt = fig6_experiment::<f64>(8.0, &ks, DiscriminationScale::default(), &opts).unwrap();
    assert!(sharp.rows[0].matching.g_star <= 1.0 + 1e-6);
    let (a, b) = (sharp.plateau_k.unwrap(), blunt.plateau_k.unwrap());
    assert!(a > b, "k' {a} vs {b}");
    assert_eq!(sharp.rows.len(), ks.len());
    assert!(sharp.rows.iter().zip(&ks).all(|(r, &k)| r.k == k));
}

#[test]
fn gray_level_scale_keeps_d_fixed() {
    let opts = SolverOptions::default();
    let rep = fig6_experiment::<f64>(2.0, &[1, 2, 3], DiscriminationScale::GrayLevels, &opts).unwrap();
    assert!(rep.rows.iter().all(|r| r.d_levels == 2.0));
    let nondecreasing = rep.checks.iter().find(|c| c.name == "matching_g_nondecreasing_in_k");
    assert!(nondecreasing.unwrap().passed);
}
