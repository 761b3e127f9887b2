use std::process::ExitCode;

use clap::Parser;
use ratefid_cli::commands::run;
use ratefid_cli::config::{load_config, Command, Flags};

/// Semantic information measures and rate-fidelity curves.
#[derive(Debug, Parser)]
#[command(name = "ratefid", version)]
struct Cli {
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(cli.command, &cli.flags) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(report) => {
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("check failed: {}: {}", c.name, c.detail);
            }
            println!("wrote {} and {}", cfg.output.display(), cfg.summary.display());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ ratefid_cli::commands::RunError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
