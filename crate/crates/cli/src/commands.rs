//! Dispatch of a validated [`RunConfig`] to the library, and rendering of
//! the resulting tables.

use std::path::PathBuf;

use ratefid::discrimination::{gaussian_membership, gray_level_source, GaussianDiscriminationSpec};
use ratefid::experiments::{
    fig5_experiment, fig6_experiment, find_matching_point, Check, DiscriminationScale,
};
use ratefid::measures::{info_decomposition, semantic_info_bound};
use ratefid::prob::{Channel, MembershipMatrix, ProbVector};
use ratefid::rate::{
    default_s_grid, limiting_errors_report, rate_distortion_at, rate_distortion_point,
    rate_fidelity_curve, CurveMode, DistortionMatrix, FidelityProblem, RateCurve, RatePoint,
    SolverOptions,
};
use serde_json::{json, Value};

use crate::config::{Command, DistortionSpec, MembershipSpec, PriorSpec, RunConfig, SGrid};
use crate::output::{fmt_num, render_csv, write_file, TOOL_VERSION};
use crate::suite;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Compute(#[from] ratefid::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Everything a run produces, before anything touches the disk.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub csv: String,
    pub summary: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Computes and writes the CSV and the JSON summary.
pub fn run(cfg: &RunConfig) -> Result<RunReport, RunError> {
    let report = execute(cfg)?;
    write_file(&cfg.output, &report.csv).map_err(|source| RunError::Io {
        path: cfg.output.clone(),
        source,
    })?;
    let text = serde_json::to_string_pretty(&report.summary).expect("summary is valid json") + "\n";
    write_file(&cfg.summary, &text).map_err(|source| RunError::Io {
        path: cfg.summary.clone(),
        source,
    })?;
    Ok(report)
}

/// Computes the run without writing anything.
pub fn execute(cfg: &RunConfig) -> Result<RunReport, RunError> {
    let (csv, extra, checks) = match cfg.command {
        Command::Measure => measure(cfg)?,
        Command::RateCurve => rate_curve(cfg)?,
        Command::RateDistortion => rate_distortion(cfg)?,
        Command::LimitingErrors => limiting_errors(cfg)?,
        Command::Fig5 => fig5(cfg)?,
        Command::Fig6 => fig6(cfg)?,
        Command::Verify => verify(cfg),
    };
    let summary = json!({
        "tool_version": TOOL_VERSION,
        "command": cfg.command.name(),
        "config": config_echo(cfg),
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        "results": extra,
    });
    Ok(RunReport {
        csv,
        summary,
        checks,
    })
}

type Output = (String, Value, Vec<Check>);

fn check_json(c: &Check) -> Value {
    json!({ "name": c.name, "passed": c.passed, "detail": c.detail })
}

fn config_echo(cfg: &RunConfig) -> Value {
    let s_grid = match &cfg.s_grid {
        SGrid::Default => json!("default"),
        SGrid::Range { min, max, step } => json!({ "min": min, "max": max, "step": step }),
        SGrid::List(v) => json!(v),
    };
    let prior = match &cfg.prior {
        PriorSpec::GrayNormal => json!("gray-normal"),
        PriorSpec::Inline(v) => json!(v),
    };
    let membership = match &cfg.membership {
        MembershipSpec::Gaussian => json!("gaussian"),
        MembershipSpec::Inline(v) => json!(v),
    };
    let distortion = match &cfg.distortion {
        DistortionSpec::Hamming => json!("hamming"),
        DistortionSpec::Squared => json!("squared"),
        DistortionSpec::Inline(v) => json!(v),
    };
    let scale = match cfg.scale {
        DiscriminationScale::GrayLevels => json!("gray-levels"),
        DiscriminationScale::Reference(m) => json!({ "reference_level": m }),
    };
    json!({
        "k": cfg.k,
        "d": cfg.d,
        "d_list": cfg.d_list,
        "k_list": cfg.k_list,
        "s_grid": s_grid,
        "prior": prior,
        "membership": membership,
        "source_y": cfg.source_y,
        "distortion": distortion,
        "targets": cfg.targets,
        "scale": scale,
        "output": cfg.output.display().to_string(),
        "summary": cfg.summary.display().to_string(),
        "seed": cfg.seed,
    })
}

fn prior(cfg: &RunConfig) -> Result<ProbVector<f64>, RunError> {
    Ok(match &cfg.prior {
        PriorSpec::GrayNormal => gray_level_source(cfg.k)?,
        PriorSpec::Inline(v) => ProbVector::new(v.clone())?,
    })
}

fn membership(cfg: &RunConfig) -> Result<MembershipMatrix<f64>, RunError> {
    Ok(match &cfg.membership {
        MembershipSpec::Gaussian => {
            let n = cfg.n_symbols() as u32;
            gaussian_membership(&GaussianDiscriminationSpec::new(n - 1, cfg.d)?)
        }
        MembershipSpec::Inline(rows) => MembershipMatrix::new(rows.clone())?,
    })
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check::new(name, passed, detail.into())
}

/// Channel that describes each symbol with a message chosen in proportion
/// to how well the message fits it.
fn grade_channel(q: &MembershipMatrix<f64>) -> Result<Channel<f64>, RunError> {
    let rows = (0..q.n_symbols())
        .map(|i| {
            let col: Vec<f64> = (0..q.n_sets()).map(|j| q.grade(j, i)).collect();
            let total: f64 = col.iter().sum();
            if total > 0.0 {
                col.iter().map(|g| g / total).collect()
            } else {
                vec![1.0 / q.n_sets() as f64; q.n_sets()]
            }
        })
        .collect();
    Ok(Channel::new(rows)?)
}

fn measure(cfg: &RunConfig) -> Result<Output, RunError> {
    let p = prior(cfg)?;
    let q = membership(cfg)?;
    let ch = grade_channel(&q)?;
    let dec = info_decomposition(&p, &ch, &q)?;
    let bound = semantic_info_bound(&p, &q)?;
    let quantities = [
        ("generalized_mutual_info", dec.generalized_mutual_info),
        ("forecasting_entropy", dec.forecasting_entropy),
        ("posterior_forecasting_entropy", dec.posterior_forecasting_entropy),
        ("generalized_entropy", dec.generalized_entropy),
        ("fuzzy_entropy", dec.fuzzy_entropy),
        ("shannon_mutual_info", dec.shannon_mutual_info),
        ("source_entropy", p.entropy()),
        ("semantic_info_bound", bound),
    ];
    let rows: Vec<Vec<String>> = quantities
        .iter()
        .map(|(name, v)| vec![name.to_string(), fmt_num(*v)])
        .collect();
    let residual = dec.identity_residual();
    let checks = vec![
        check(
            "decomposition_identity",
            residual < 1e-9,
            format!("residual {residual:.3e} bits"),
        ),
        check(
            "generalized_below_shannon",
            dec.generalized_mutual_info <= dec.shannon_mutual_info + 1e-9,
            format!(
                "G = {} <= I = {}",
                fmt_num(dec.generalized_mutual_info),
                fmt_num(dec.shannon_mutual_info)
            ),
        ),
    ];
    let extra = json!(quantities
        .iter()
        .map(|(n, v)| (n.to_string(), json!(v)))
        .collect::<serde_json::Map<_, _>>());
    Ok((render_csv(cfg, &["quantity", "value_bits"], &rows), extra, checks))
}

fn point_json(p: &RatePoint<f64>) -> Value {
    json!({
        "s": p.s,
        "converged": p.converged,
        "iterations": p.iterations,
        "newton_steps": p.newton_steps,
        "final_change": p.final_change,
    })
}

fn curve_checks(prefix: &str, curve: &RateCurve<f64>) -> Vec<Check> {
    let bad: Vec<String> = curve
        .points
        .iter()
        .filter(|p| !p.converged)
        .map(|p| fmt_num(p.s))
        .collect();
    let viol = curve.invariant_violations();
    let below: Vec<String> = curve
        .points
        .iter()
        .filter(|p| p.converged && p.s >= 0.0 && p.r < p.g - 1e-9)
        .map(|p| fmt_num(p.s))
        .collect();
    vec![
        check(
            &format!("{prefix}all_points_converged"),
            bad.is_empty(),
            if bad.is_empty() {
                "every point converged".to_string()
            } else {
                format!("not converged at s = {}", bad.join(" "))
            },
        ),
        check(
            &format!("{prefix}curve_shape"),
            viol.is_empty(),
            if viol.is_empty() {
                "monotone with consistent chord slopes".to_string()
            } else {
                viol.join("; ")
            },
        ),
        check(
            &format!("{prefix}rate_at_least_fidelity"),
            below.is_empty(),
            if below.is_empty() {
                "R >= G wherever s >= 0".to_string()
            } else {
                format!("R < G at s = {}", below.join(" "))
            },
        ),
    ]
}

fn rate_curve(cfg: &RunConfig) -> Result<Output, RunError> {
    let problem = FidelityProblem::new(prior(cfg)?, membership(cfg)?)?;
    let grid = cfg.s_grid.values().unwrap_or_else(default_s_grid);
    let opts = SolverOptions::default();
    let curve = rate_fidelity_curve(&problem, &grid, CurveMode::WarmStart, &opts)?;
    let rows: Vec<Vec<String>> = curve
        .points
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let slope = match curve.chord_slope_ok(k, 1e-3) {
                Some(true) => "ok",
                Some(false) => "fail",
                None => "na",
            };
            vec![
                fmt_num(p.s),
                fmt_num(p.g),
                fmt_num(p.r),
                slope.to_string(),
                p.converged.to_string(),
            ]
        })
        .collect();
    let mut checks = curve_checks("", &curve);
    let matching = match find_matching_point(&problem, &curve, &opts) {
        Ok(m) => json!({
            "s_star": m.s_star,
            "g_star": m.g_star,
            "r_star": m.r_star,
            "gap": m.gap,
            "boundary": m.boundary,
        }),
        Err(e) => {
            checks.push(check("matching_point", false, e.to_string()));
            Value::Null
        }
    };
    let extra = json!({
        "points": curve.points.iter().map(point_json).collect::<Vec<_>>(),
        "matching_point": matching,
    });
    let csv = render_csv(cfg, &["s", "G_bits", "R_bits", "slope_check", "converged"], &rows);
    Ok((csv, extra, checks))
}

fn distortion(cfg: &RunConfig, n: usize) -> Result<DistortionMatrix<f64>, RunError> {
    Ok(match &cfg.distortion {
        DistortionSpec::Hamming => DistortionMatrix::hamming(n)?,
        DistortionSpec::Squared => DistortionMatrix::new(
            (0..n)
                .map(|i| (0..n).map(|j| ((i as f64) - (j as f64)).powi(2)).collect())
                .collect(),
        )?,
        DistortionSpec::Inline(rows) => DistortionMatrix::new(rows.clone())?,
    })
}

/// Slopes used by `rate-distortion` when none are configured.
pub fn default_distortion_grid() -> Vec<f64> {
    (0..=20).map(|k| -10.0 + 0.5 * k as f64).collect()
}

fn rate_distortion(cfg: &RunConfig) -> Result<Output, RunError> {
    let p = prior(cfg)?;
    let dist = distortion(cfg, p.len())?;
    let opts = SolverOptions::default();
    let points: Vec<RatePoint<f64>> = if cfg.targets.is_empty() {
        let grid = cfg.s_grid.values().unwrap_or_else(default_distortion_grid);
        if let Some(s) = grid.iter().find(|&&s| s > 0.0) {
            return Err(RunError::Config(format!(
                "s_grid: rate-distortion slopes must be <= 0 (got {s})"
            )));
        }
        grid.iter()
            .map(|&s| rate_distortion_point(&p, &dist, s, &opts))
            .collect::<Result<_, _>>()?
    } else {
        cfg.targets
            .iter()
            .map(|&t| rate_distortion_at(&p, &dist, t, &opts))
            .collect::<Result<_, _>>()?
    };
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|pt| {
            vec![
                fmt_num(pt.s),
                fmt_num(pt.g),
                fmt_num(pt.r),
                pt.converged.to_string(),
            ]
        })
        .collect();
    let bad = points.iter().filter(|p| !p.converged).count();
    let mut sorted: Vec<&RatePoint<f64>> = points.iter().collect();
    sorted.sort_by(|a, b| a.g.partial_cmp(&b.g).unwrap());
    let monotone = sorted.windows(2).all(|w| w[1].r <= w[0].r + 1e-9);
    let checks = vec![
        check(
            "all_points_converged",
            bad == 0,
            format!("{bad} of {} points not converged", points.len()),
        ),
        check(
            "rate_nonincreasing_in_distortion",
            monotone,
            "R(D) ordered by D".to_string(),
        ),
    ];
    let extra = json!({ "points": points.iter().map(point_json).collect::<Vec<_>>() });
    Ok((render_csv(cfg, &["s", "D", "R_bits", "converged"], &rows), extra, checks))
}

fn limiting_errors(cfg: &RunConfig) -> Result<Output, RunError> {
    let px = prior(cfg)?;
    let q = membership(cfg)?;
    let py = match &cfg.source_y {
        Some(v) => ProbVector::new(v.clone())?,
        None => ProbVector::uniform(q.n_sets())?,
    };
    let rep = limiting_errors_report(&py, &q, &px)?;
    let rows = vec![vec![
        fmt_num(rep.rate),
        fmt_num(rep.generalized_entropy),
        fmt_num(rep.residual),
    ]];
    let checks = vec![check(
        "rate_at_most_generalized_entropy",
        rep.residual >= -1e-9,
        format!("H_Y - R = {}", fmt_num(rep.residual)),
    )];
    let extra = json!({
        "rate": rep.rate,
        "generalized_entropy": rep.generalized_entropy,
        "residual": rep.residual,
    });
    let csv = render_csv(cfg, &["R_bits", "H_Y_bits", "residual_bits"], &rows);
    Ok((csv, extra, checks))
}

fn fig5(cfg: &RunConfig) -> Result<Output, RunError> {
    let grid = cfg.s_grid.values().unwrap_or_else(default_s_grid);
    let rep = fig5_experiment(cfg.k, &cfg.d_list, &grid, &SolverOptions::default())?;
    let rows: Vec<Vec<String>> = rep
        .rows()
        .iter()
        .map(|r| vec![fmt_num(r.d), fmt_num(r.s), fmt_num(r.g), fmt_num(r.r)])
        .collect();
    let extra = json!(rep
        .curves
        .iter()
        .map(|c| json!({
            "d": c.d,
            "matching_point": {
                "s_star": c.matching.s_star,
                "g_star": c.matching.g_star,
                "r_star": c.matching.r_star,
                "gap": c.matching.gap,
                "boundary": c.matching.boundary,
            },
            "points": c.curve.points.iter().map(point_json).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>());
    let csv = render_csv(cfg, &["d", "s", "G_bits", "R_bits"], &rows);
    Ok((csv, extra, rep.checks))
}

fn fig6(cfg: &RunConfig) -> Result<Output, RunError> {
    let rep = fig6_experiment(cfg.d, &cfg.k_list, cfg.scale, &SolverOptions::default())?;
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                fmt_num(r.matching.g_star),
                fmt_num(r.matching.s_star),
                fmt_num(r.matching.gap),
            ]
        })
        .collect();
    let extra = json!({
        "plateau_k": rep.plateau_k,
        "optimal_k": rep.optimal_k,
        "rows": rep.rows.iter().map(|r| json!({
            "k": r.k,
            "d_levels": r.d_levels,
            "g_star": r.matching.g_star,
            "r_star": r.matching.r_star,
            "s_star": r.matching.s_star,
            "gap": r.matching.gap,
            "boundary": r.matching.boundary,
        })).collect::<Vec<_>>(),
    });
    let csv = render_csv(cfg, &["k", "matching_G_bits", "s_star", "gap_bits"], &rows);
    Ok((csv, extra, rep.checks))
}

fn verify(cfg: &RunConfig) -> Output {
    let checks = suite::run_suite(cfg.seed);
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "pass" } else { "fail" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let csv = render_csv(cfg, &["invariant", "status", "detail"], &rows);
    (csv, Value::Null, checks)
}
