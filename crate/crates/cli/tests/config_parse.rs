use clap::Parser;
use ratefid_cli::config::{load_config, parse_config, Command, Flags, SGrid};
use toml::Table;

#[derive(Parser)]
struct Cli {
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn from_args(args: &[&str]) -> Result<ratefid_cli::config::RunConfig, String> {
    let cli = Cli::try_parse_from(std::iter::once("ratefid").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    load_config(cli.command, &cli.flags).map_err(|e| e.to_string())
}

#[test]
fn flags_alone_build_a_config() {
    let cfg = from_args(&["rate-curve", "--k", "4", "--d", "2.5", "--s-grid", "-1:1:0.5"]).unwrap();
    assert_eq!(cfg.k, 4);
    assert_eq!(cfg.d, 2.5);
    assert_eq!(cfg.s_grid.values().unwrap(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    assert_eq!(cfg.output.to_str(), Some("./rate-curve.csv"));
    assert_eq!(cfg.summary.to_str(), Some("./rate-curve.json"));
}

#[test]
fn defaults_are_filled_in() {
    let cfg = parse_config(Command::Fig6, None, Table::new(), vec![]).unwrap();
    assert_eq!(cfg.k, 6);
    assert_eq!(cfg.d, 4.0);
    assert_eq!(cfg.d_list, vec![2.0, 4.0, 8.0]);
    assert_eq!(cfg.k_list, (1..=8).collect::<Vec<u32>>());
    assert_eq!(cfg.s_grid, SGrid::Default);
    assert_eq!(cfg.seed, 0);
}

#[test]
fn toml_file_is_read() {
    let text = "k = 5\nd_list = [2, 4, 8]\ns_grid = { min = 0.0, max = 2.0, step = 0.5 }\n";
    let cfg = parse_config(Command::Fig5, Some(text), Table::new(), vec![]).unwrap();
    assert_eq!(cfg.k, 5);
    assert_eq!(cfg.d_list, vec![2.0, 4.0, 8.0]);
    assert_eq!(cfg.s_grid.values().unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
}

#[test]
fn flags_override_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "k = 5\nd = 3.0\n").unwrap();
    let cfg = from_args(&["measure", "--config", path.to_str().unwrap(), "--d", "7"]).unwrap();
    assert_eq!(cfg.k, 5);
    assert_eq!(cfg.d, 7.0);
}

#[test]
fn negative_width_names_the_precondition() {
    let err = from_args(&["rate-curve", "--d", "-1"]).unwrap_err();
    assert!(err.contains("d: must be positive"), "{err}");
}

#[test]
fn unknown_file_key_is_rejected() {
    let err = parse_config(Command::Measure, Some("widht = 3\n"), Table::new(), vec![]).unwrap_err();
    assert!(err.problems.iter().any(|p| p.contains("widht")), "{err}");
}

#[test]
fn every_problem_is_reported_at_once() {
    let text = "k = 0\nd = -2.0\nseed = -1\n";
    let err = parse_config(Command::RateCurve, Some(text), Table::new(), vec![]).unwrap_err();
    assert!(err.problems.len() >= 3, "{err}");
    for key in ["k:", "d:", "seed:"] {
        assert!(err.problems.iter().any(|p| p.starts_with(key)), "missing {key} in {err}");
    }
}

#[test]
fn bit_depth_is_capped() {
    let err = from_args(&["fig5", "--k", "40"]).unwrap_err();
    assert!(err.contains("k:"), "{err}");
}

#[test]
fn mismatched_membership_is_caught() {
    let err = from_args(&["measure", "--prior", "0.5,0.5", "--membership", "1,0.5,0.2;0.1,1,1"]).unwrap_err();
    assert!(err.contains("membership"), "{err}");
}

#[test]
fn positive_distortion_slopes_are_rejected() {
    let err = from_args(&["rate-distortion", "--s-grid", "-1,0.5"]).unwrap_err();
    assert!(err.contains("s_grid"), "{err}");
}

#[test]
fn descending_grid_is_rejected() {
    let err = from_args(&["rate-curve", "--s-grid", "1,0"]).unwrap_err();
    assert!(err.contains("ascending"), "{err}");
}
