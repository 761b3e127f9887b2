use std::path::Path;
use std::process::Command;

fn ratefid(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ratefid"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn rate_curve_writes_the_default_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = ratefid(dir.path(), &["rate-curve", "--k", "4", "--d", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("rate-curve.csv")).unwrap();
    assert!(csv.starts_with("# toolversion="));
    assert_eq!(data_lines(&csv).len(), 61);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("rate-curve.json")).unwrap())
            .unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["results"]["points"].as_array().unwrap().len(), 61);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = ratefid(dir.path(), &["measure", "--d", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d: must be positive"));
    assert!(!dir.path().join("measure.csv").exists());
}

#[test]
fn binary_rate_distortion_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = ratefid(dir.path(), &["rate-distortion", "--k", "1", "--targets", "0.11"]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("rate-distortion.csv")).unwrap();
    let row = data_lines(&csv)[0].split(',').collect::<Vec<_>>();
    let r: f64 = row[2].parse().unwrap();
    let h = -0.11f64 * 0.11f64.log2() - 0.89 * 0.89f64.log2();
    assert!((r - (1.0 - h)).abs() < 1e-4, "{r}");
}

#[test]
fn measure_and_limiting_errors_run() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in ["measure", "limiting-errors"] {
        let out = ratefid(dir.path(), &[cmd, "--k", "3", "--d", "1"]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let csv = std::fs::read_to_string(dir.path().join("measure.csv")).unwrap();
    assert!(csv.contains("generalized_mutual_info,"));
}

#[test]
fn fig5_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["fig5", "--k", "4", "--d-list", "2,4", "--output"];
    let a = ratefid(dir.path(), &[&args[..], &["a.csv"]].concat());
    let b = ratefid(dir.path(), &[&args[..], &["b.csv"]].concat());
    assert!(a.status.success() && b.status.success());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
