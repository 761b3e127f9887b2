//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so that every criterion is reported
//! even when an earlier one fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ratefid::experiments::{fig5_experiment, fig6_experiment, Check, DiscriminationScale};
use ratefid::rate::{default_s_grid, SolverOptions};
use ratefid_cli::suite;

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_check(c: Check) -> Outcome {
    Outcome {
        passed: c.passed,
        detail: c.detail,
    }
}

/// All named checks must be present and passing.
fn pick(checks: &[Check], names: &[&str]) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names {
        match checks.iter().find(|c| c.name == *name) {
            Some(c) => {
                passed &= c.passed;
                let mark = if c.passed { "ok" } else { "FAILED" };
                parts.push(format!("{name} {mark} ({})", c.detail));
            }
            None => {
                passed = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn fig5_criterion() -> Outcome {
    let opts = SolverOptions::default();
    match fig5_experiment::<f64>(6, &[2.0, 4.0, 8.0], &default_s_grid(), &opts) {
        Ok(rep) => pick(
            &rep.checks,
            &[
                "zero_slope_r0_g_negative",
                "matching_gap_below_1e-3",
                "matching_g_decreasing_in_d",
                "rate_positive_at_g_minus_2",
            ],
        ),
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn fig6_criterion() -> Outcome {
    let opts = SolverOptions::default();
    let ks: Vec<u32> = (1..=8).collect();
    match fig6_experiment::<f64>(4.0, &ks, DiscriminationScale::default(), &opts) {
        Ok(rep) => {
            let mut out = pick(&rep.checks, &["matching_g_nondecreasing_in_k", "plateau_detected"]);
            let g: Vec<String> = rep
                .rows
                .iter()
                .map(|r| format!("k={} G*={:.4}", r.k, r.matching.g_star))
                .collect();
            out.detail = format!("{}; {}", out.detail, g.join(", "));
            out
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn determinism_criterion() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for name in ["first.csv", "second.csv"] {
        let out = Command::new(env!("CARGO_BIN_EXE_ratefid"))
            .current_dir(dir.path())
            .args(["fig5", "--k", "6", "--d-list", "2,4,8", "--output", name])
            .output()
            .unwrap();
        if out.status.code() == Some(2) || !dir.path().join(name).exists() {
            return Outcome {
                passed: false,
                detail: String::from_utf8_lossy(&out.stderr).into_owned(),
            };
        }
        files.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    let same = files[0] == files[1];
    Outcome {
        passed: same && !files[0].is_empty(),
        detail: format!(
            "{} bytes, {}",
            files[0].len(),
            if same { "identical" } else { "different" }
        ),
    }
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("reduction identity", secs(1), Box::new(|| from_check(suite::reduction_identity(SEED)))),
        ("entropy decomposition", secs(1), Box::new(|| from_check(suite::entropy_decomposition(SEED)))),
        ("forecast optimality", secs(5), Box::new(|| from_check(suite::forecast_optimality(SEED)))),
        ("B-set rate identity", secs(30), Box::new(|| from_check(suite::b_set_identity()))),
        ("2x2 oracle equivalence", secs(120), Box::new(|| from_check(suite::oracle_equivalence()))),
        ("binary rate-distortion", secs(10), Box::new(|| from_check(suite::binary_rate_distortion()))),
        ("rate-fidelity curve family", secs(300), Box::new(fig5_criterion)),
        ("matching information vs bit depth", secs(600), Box::new(fig6_criterion)),
        ("clear-set rate identity", secs(1), Box::new(|| from_check(suite::clear_set_rate_identity(SEED)))),
        ("fig5 determinism", Duration::MAX, Box::new(determinism_criterion)),
    ];
    let mut failed = 0;
    for (n, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took < *limit;
        let passed = out.passed && in_time;
        if !passed {
            failed += 1;
        }
        let budget = if *limit == Duration::MAX {
            String::new()
        } else {
            format!(" (limit {:.0?})", limit)
        };
        println!(
            "criterion {:>2} {}: {} in {:.2?}{}: {}",
            n + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            took,
            budget,
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
