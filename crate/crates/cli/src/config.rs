//! Run configuration: TOML file plus command-line overrides.
//!
//! Both sources are folded into one key/value table (flags win) and the
//! table is validated in a single pass, so every problem is reported at
//! once.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use ratefid::experiments::{DiscriminationScale, MAX_EXPERIMENT_BITS, REFERENCE_MAX_LEVEL};
use ratefid::prob::{MembershipMatrix, ProbVector};
use ratefid::rate::MAX_ABS_SLOPE;
use toml::{Table, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Measure,
    RateCurve,
    RateDistortion,
    LimitingErrors,
    Fig5,
    Fig6,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Measure => "measure",
            Self::RateCurve => "rate-curve",
            Self::RateDistortion => "rate-distortion",
            Self::LimitingErrors => "limiting-errors",
            Self::Fig5 => "fig5",
            Self::Fig6 => "fig6",
            Self::Verify => "verify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Slopes to solve.
#[derive(Debug, Clone, PartialEq)]
pub enum SGrid {
    /// The command's built-in grid.
    Default,
    /// `min, min + step, ...` up to `max` inclusive.
    Range { min: f64, max: f64, step: f64 },
    List(Vec<f64>),
}

impl SGrid {
    /// Expanded grid, or `None` for [`SGrid::Default`].
    pub fn values(&self) -> Option<Vec<f64>> {
        match self {
            Self::Default => None,
            Self::List(v) => Some(v.clone()),
            Self::Range { min, max, step } => {
                let n = ((max - min) / step + 1e-9).floor() as usize;
                // rounding keeps decimal steps printable as typed
                Some(
                    (0..=n)
                        .map(|k| ((min + k as f64 * step) * 1e12).round() / 1e12)
                        .collect(),
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    /// Discretized normal over the `2^k` gray levels.
    GrayNormal,
    Inline(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MembershipSpec {
    /// Gaussian confusion kernel of width `d` over the gray levels.
    Gaussian,
    /// One row per set, one column per source symbol.
    Inline(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistortionSpec {
    Hamming,
    /// `(i - j)^2`.
    Squared,
    Inline(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub k: u32,
    pub d: f64,
    pub d_list: Vec<f64>,
    pub k_list: Vec<u32>,
    pub s_grid: SGrid,
    pub prior: PriorSpec,
    pub membership: MembershipSpec,
    /// Source distribution over messages for `limiting-errors`; uniform if unset.
    pub source_y: Option<Vec<f64>>,
    pub distortion: DistortionSpec,
    /// Target distortions for `rate-distortion`; the slope grid is used if empty.
    pub targets: Vec<f64>,
    pub scale: DiscriminationScale,
    pub output: PathBuf,
    pub summary: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    /// Number of source symbols implied by the prior.
    pub fn n_symbols(&self) -> usize {
        match &self.prior {
            PriorSpec::GrayNormal => 1usize << self.k,
            PriorSpec::Inline(v) => v.len(),
        }
    }

    /// Number of messages implied by the membership.
    pub fn n_sets(&self) -> usize {
        match &self.membership {
            MembershipSpec::Gaussian => self.n_symbols(),
            MembershipSpec::Inline(rows) => rows.len(),
        }
    }
}

/// Every problem found while building a [`RunConfig`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError {
    pub problems: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration:")?;
        for p in &self.problems {
            write!(f, "\n  - {p}")?;
        }
        Ok(())
    }
}

/// Keys accepted in a config file (and the matching `--kebab-case` flags).
pub const KEYS: &[&str] = &[
    "command",
    "k",
    "d",
    "d_list",
    "k_list",
    "s_grid",
    "prior",
    "membership",
    "source_y",
    "distortion",
    "targets",
    "scale",
    "reference_level",
    "output",
    "summary",
    "seed",
];

/// Command-line overrides. Every flag mirrors a config-file key.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bits per gray level.
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    /// Discrimination width.
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Comma-separated widths for fig5.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub d_list: Option<Vec<f64>>,
    /// Comma-separated bit depths for fig6.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub k_list: Option<Vec<i64>>,
    /// `min:max:step`, a comma-separated list, or `default`.
    #[arg(long, allow_hyphen_values = true)]
    pub s_grid: Option<String>,
    /// `gray-normal` or comma-separated probabilities.
    #[arg(long, allow_hyphen_values = true)]
    pub prior: Option<String>,
    /// `gaussian` or rows separated by `;`, grades by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub membership: Option<String>,
    /// Comma-separated message probabilities for limiting-errors.
    #[arg(long, allow_hyphen_values = true)]
    pub source_y: Option<String>,
    /// `hamming`, `squared`, or rows separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub distortion: Option<String>,
    /// Comma-separated target distortions for rate-distortion.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub targets: Option<Vec<f64>>,
    /// `reference` or `gray-levels`: unit of d in fig6.
    #[arg(long)]
    pub scale: Option<String>,
    /// Maximum gray level of the reference scale.
    #[arg(long, allow_negative_numbers = true)]
    pub reference_level: Option<i64>,
    /// CSV path; defaults to `./<command>.csv`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON run summary path; defaults to the CSV path with a `.json` extension.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub seed: Option<i64>,
}

fn parse_floats(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().ok()).collect()
}

fn float_array(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| Value::Float(x)).collect())
}

fn parse_matrix(s: &str) -> Option<Value> {
    let rows: Option<Vec<Value>> = s
        .split(';')
        .map(|r| parse_floats(r).map(|v| float_array(&v)))
        .collect();
    rows.map(Value::Array)
}

impl Flags {
    /// Table of the flags that were given, plus any that failed to parse.
    pub fn to_table(&self) -> (Table, Vec<String>) {
        let mut t = Table::new();
        let mut errs = Vec::new();
        if let Some(v) = self.k {
            t.insert("k".into(), Value::Integer(v));
        }
        if let Some(v) = self.d {
            t.insert("d".into(), Value::Float(v));
        }
        if let Some(v) = &self.d_list {
            t.insert("d_list".into(), float_array(v));
        }
        if let Some(v) = &self.k_list {
            t.insert(
                "k_list".into(),
                Value::Array(v.iter().map(|&x| Value::Integer(x)).collect()),
            );
        }
        if let Some(s) = &self.s_grid {
            let parts: Vec<&str> = s.split(':').collect();
            if s == "default" {
                t.insert("s_grid".into(), Value::String(s.clone()));
            } else if parts.len() == 3 {
                let nums: Option<Vec<f64>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
                match nums {
                    Some(n) => {
                        let mut g = Table::new();
                        g.insert("min".into(), Value::Float(n[0]));
                        g.insert("max".into(), Value::Float(n[1]));
                        g.insert("step".into(), Value::Float(n[2]));
                        t.insert("s_grid".into(), Value::Table(g));
                    }
                    None => errs.push(format!("--s-grid: cannot parse range '{s}'")),
                }
            } else {
                match parse_floats(s) {
                    Some(v) => {
                        t.insert("s_grid".into(), float_array(&v));
                    }
                    None => errs.push(format!("--s-grid: cannot parse list '{s}'")),
                }
            }
        }
        let named_or = |t: &mut Table,
                        errs: &mut Vec<String>,
                        key: &str,
                        s: &str,
                        names: &[&str],
                        matrix: bool| {
            if names.contains(&s) {
                t.insert(key.into(), Value::String(s.into()));
                return;
            }
            let parsed = if matrix {
                parse_matrix(s)
            } else {
                parse_floats(s).map(|v| float_array(&v))
            };
            match parsed {
                Some(v) => {
                    t.insert(key.into(), v);
                }
                None => errs.push(format!("--{}: cannot parse '{s}'", key.replace('_', "-"))),
            }
        };
        if let Some(s) = &self.prior {
            named_or(&mut t, &mut errs, "prior", s, &["gray-normal"], false);
        }
        if let Some(s) = &self.membership {
            named_or(&mut t, &mut errs, "membership", s, &["gaussian"], true);
        }
        if let Some(s) = &self.source_y {
            named_or(&mut t, &mut errs, "source_y", s, &[], false);
        }
        if let Some(s) = &self.distortion {
            named_or(&mut t, &mut errs, "distortion", s, &["hamming", "squared"], true);
        }
        if let Some(v) = &self.targets {
            t.insert("targets".into(), float_array(v));
        }
        if let Some(s) = &self.scale {
            t.insert("scale".into(), Value::String(s.clone()));
        }
        if let Some(v) = self.reference_level {
            t.insert("reference_level".into(), Value::Integer(v));
        }
        if let Some(p) = &self.output {
            t.insert("output".into(), Value::String(p.display().to_string()));
        }
        if let Some(p) = &self.summary {
            t.insert("summary".into(), Value::String(p.display().to_string()));
        }
        if let Some(v) = self.seed {
            t.insert("seed".into(), Value::Integer(v));
        }
        (t, errs)
    }
}

/// Reads `flags.config` if given and builds the configuration.
pub fn load_config(command: Command, flags: &Flags) -> Result<RunConfig, ConfigError> {
    let text = match &flags.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| ConfigError {
            problems: vec![format!("config file {}: {e}", path.display())],
        })?),
        None => None,
    };
    let (overrides, errs) = flags.to_table();
    parse_config(command, text.as_deref(), overrides, errs)
}

/// Merges `file_text` (TOML) with `overrides` and validates the result.
/// `pending` carries problems already found while reading flags.
pub fn parse_config(
    command: Command,
    file_text: Option<&str>,
    overrides: Table,
    pending: Vec<String>,
) -> Result<RunConfig, ConfigError> {
    let mut problems = pending;
    let mut table = match file_text.map(str::parse::<Table>) {
        Some(Ok(t)) => t,
        Some(Err(e)) => {
            problems.push(format!("config file: {}", e.message()));
            Table::new()
        }
        None => Table::new(),
    };
    table.extend(overrides);
    let mut v = Validator {
        table: &table,
        problems,
    };
    let cfg = v.build(command);
    match cfg {
        Some(cfg) if v.problems.is_empty() => Ok(cfg),
        _ => Err(ConfigError {
            problems: v.problems,
        }),
    }
}

struct Validator<'a> {
    table: &'a Table,
    problems: Vec<String>,
}

impl Validator<'_> {
    fn fail(&mut self, key: &str, msg: impl fmt::Display) {
        self.problems.push(format!("{key}: {msg}"));
    }

    fn number(&mut self, key: &str, v: &Value) -> Option<f64> {
        match v {
            Value::Float(x) => Some(*x),
            Value::Integer(x) => Some(*x as f64),
            other => {
                self.fail(key, format!("expected a number, got {}", other.type_str()));
                None
            }
        }
    }

    fn integer(&mut self, key: &str, v: &Value) -> Option<i64> {
        match v {
            Value::Integer(x) => Some(*x),
            other => {
                self.fail(key, format!("expected an integer, got {}", other.type_str()));
                None
            }
        }
    }

    fn numbers(&mut self, key: &str, v: &Value) -> Option<Vec<f64>> {
        let Value::Array(items) = v else {
            self.fail(key, format!("expected a list of numbers, got {}", v.type_str()));
            return None;
        };
        let out: Vec<Option<f64>> = items.iter().map(|x| self.number(key, x)).collect();
        out.into_iter().collect()
    }

    fn matrix(&mut self, key: &str, v: &Value) -> Option<Vec<Vec<f64>>> {
        let Value::Array(rows) = v else {
            self.fail(key, format!("expected a list of rows, got {}", v.type_str()));
            return None;
        };
        let out: Vec<Option<Vec<f64>>> = rows.iter().map(|r| self.numbers(key, r)).collect();
        let out: Option<Vec<Vec<f64>>> = out.into_iter().collect();
        let out = out?;
        if out.is_empty() || out[0].is_empty() {
            self.fail(key, "matrix must have at least one nonempty row");
            return None;
        }
        if out.iter().any(|r| r.len() != out[0].len()) {
            self.fail(key, "rows have different lengths");
            return None;
        }
        Some(out)
    }

    fn string<'v>(&mut self, key: &str, v: &'v Value) -> Option<&'v str> {
        match v {
            Value::String(s) => Some(s),
            other => {
                self.fail(key, format!("expected a string, got {}", other.type_str()));
                None
            }
        }
    }

    fn positive(&mut self, key: &str, x: f64) -> Option<f64> {
        if x > 0.0 && x.is_finite() {
            Some(x)
        } else {
            self.fail(key, format!("must be positive and finite (got {x})"));
            None
        }
    }

    fn bits(&mut self, key: &str, x: i64, max: u32) -> Option<u32> {
        if (1..=max as i64).contains(&x) {
            Some(x as u32)
        } else {
            self.fail(key, format!("must be an integer in 1..={max} (got {x})"));
            None
        }
    }

    fn build(&mut self, command: Command) -> Option<RunConfig> {
        let t = self.table;
        for key in t.keys() {
            if !KEYS.contains(&key.as_str()) {
                self.fail(key, "unknown key");
            }
        }
        if let Some(v) = t.get("command") {
            if let Some(s) = self.string("command", v) {
                if s != command.name() {
                    self.fail("command", format!("file says '{s}' but '{command}' was requested"));
                }
            }
        }

        let k = match t.get("k") {
            Some(v) => self
                .integer("k", v)
                .and_then(|x| self.bits("k", x, MAX_EXPERIMENT_BITS)),
            None => Some(6),
        };
        let d = match t.get("d") {
            Some(v) => self.number("d", v).and_then(|x| self.positive("d", x)),
            None => Some(4.0),
        };
        let d_list = match t.get("d_list") {
            Some(v) => self.numbers("d_list", v).and_then(|xs| {
                if xs.is_empty() {
                    self.fail("d_list", "must not be empty");
                    return None;
                }
                let ok: Vec<Option<f64>> = xs.iter().map(|&x| self.positive("d_list", x)).collect();
                ok.into_iter().collect()
            }),
            None => Some(vec![2.0, 4.0, 8.0]),
        };
        let k_list = match t.get("k_list") {
            Some(Value::Array(items)) => {
                let ks: Vec<Option<u32>> = items
                    .iter()
                    .map(|x| {
                        self.integer("k_list", x)
                            .and_then(|x| self.bits("k_list", x, MAX_EXPERIMENT_BITS))
                    })
                    .collect();
                let ks: Option<Vec<u32>> = ks.into_iter().collect();
                match ks {
                    Some(ks) if ks.is_empty() => {
                        self.fail("k_list", "must not be empty");
                        None
                    }
                    Some(ks) if ks.windows(2).any(|w| w[0] >= w[1]) => {
                        self.fail("k_list", "must be strictly ascending");
                        None
                    }
                    other => other,
                }
            }
            Some(other) => {
                self.fail("k_list", format!("expected a list of integers, got {}", other.type_str()));
                None
            }
            None => Some((1..=8).collect()),
        };
        let s_grid = match t.get("s_grid") {
            None => Some(SGrid::Default),
            Some(v) => self.s_grid(v),
        };
        let prior = match t.get("prior") {
            None => Some(PriorSpec::GrayNormal),
            Some(Value::String(s)) if s == "gray-normal" => Some(PriorSpec::GrayNormal),
            Some(v @ Value::Array(_)) => self.numbers("prior", v).and_then(|p| {
                match ProbVector::new(p.clone()) {
                    Ok(_) => Some(PriorSpec::Inline(p)),
                    Err(e) => {
                        self.fail("prior", e);
                        None
                    }
                }
            }),
            Some(other) => {
                self.fail("prior", format!("expected 'gray-normal' or a list, got {other}"));
                None
            }
        };
        let membership = match t.get("membership") {
            None => Some(MembershipSpec::Gaussian),
            Some(Value::String(s)) if s == "gaussian" => Some(MembershipSpec::Gaussian),
            Some(v @ Value::Array(_)) => self.matrix("membership", v).and_then(|m| {
                match MembershipMatrix::new(m.clone()) {
                    Ok(_) => Some(MembershipSpec::Inline(m)),
                    Err(e) => {
                        self.fail("membership", e);
                        None
                    }
                }
            }),
            Some(other) => {
                self.fail("membership", format!("expected 'gaussian' or a matrix, got {other}"));
                None
            }
        };
        let source_y = match t.get("source_y") {
            None => Some(None),
            Some(v) => self.numbers("source_y", v).and_then(|p| match ProbVector::new(p.clone()) {
                Ok(_) => Some(Some(p)),
                Err(e) => {
                    self.fail("source_y", e);
                    None
                }
            }),
        };
        let distortion = match t.get("distortion") {
            None => Some(DistortionSpec::Hamming),
            Some(Value::String(s)) if s == "hamming" => Some(DistortionSpec::Hamming),
            Some(Value::String(s)) if s == "squared" => Some(DistortionSpec::Squared),
            Some(v @ Value::Array(_)) => self.matrix("distortion", v).and_then(|m| {
                if m.iter().flatten().any(|x| !(*x >= 0.0) || !x.is_finite()) {
                    self.fail("distortion", "entries must be finite and nonnegative");
                    None
                } else {
                    Some(DistortionSpec::Inline(m))
                }
            }),
            Some(other) => {
                self.fail(
                    "distortion",
                    format!("expected 'hamming', 'squared' or a matrix, got {other}"),
                );
                None
            }
        };
        let targets = match t.get("targets") {
            None => Some(Vec::new()),
            Some(v) => self.numbers("targets", v).and_then(|xs| {
                if xs.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
                    self.fail("targets", "target distortions must be finite and nonnegative");
                    None
                } else {
                    Some(xs)
                }
            }),
        };
        let reference_level = match t.get("reference_level") {
            None => Some(REFERENCE_MAX_LEVEL),
            Some(v) => self.integer("reference_level", v).and_then(|x| {
                if x >= 1 && x <= u32::MAX as i64 {
                    Some(x as u32)
                } else {
                    self.fail("reference_level", format!("must be a positive integer (got {x})"));
                    None
                }
            }),
        };
        let scale = match t.get("scale") {
            None => Some("reference"),
            Some(v) => self.string("scale", v),
        }
        .and_then(|s| match s {
            "reference" => reference_level.map(DiscriminationScale::Reference),
            "gray-levels" => Some(DiscriminationScale::GrayLevels),
            other => {
                self.fail("scale", format!("expected 'reference' or 'gray-levels', got '{other}'"));
                None
            }
        });
        let output = match t.get("output") {
            None => Some(PathBuf::from(format!("./{}.csv", command.name()))),
            Some(v) => self.string("output", v).map(PathBuf::from),
        };
        let summary = match t.get("summary") {
            None => output.as_deref().map(|o: &Path| o.with_extension("json")),
            Some(v) => self.string("summary", v).map(PathBuf::from),
        };
        let seed = match t.get("seed") {
            None => Some(0),
            Some(v) => self.integer("seed", v).and_then(|x| {
                if x >= 0 {
                    Some(x as u64)
                } else {
                    self.fail("seed", format!("must be nonnegative (got {x})"));
                    None
                }
            }),
        };

        let cfg = RunConfig {
            command,
            k: k?,
            d: d?,
            d_list: d_list?,
            k_list: k_list?,
            s_grid: s_grid?,
            prior: prior?,
            membership: membership?,
            source_y: source_y?,
            distortion: distortion?,
            targets: targets?,
            scale: scale?,
            output: output?,
            summary: summary?,
            seed: seed?,
        };
        self.cross_check(&cfg);
        Some(cfg)
    }

    fn s_grid(&mut self, v: &Value) -> Option<SGrid> {
        let grid = match v {
            Value::String(s) if s == "default" => return Some(SGrid::Default),
            Value::Array(_) => SGrid::List(self.numbers("s_grid", v)?),
            Value::Table(t) => {
                for key in t.keys() {
                    if !["min", "max", "step"].contains(&key.as_str()) {
                        self.fail(&format!("s_grid.{key}"), "unknown key");
                    }
                }
                let mut get = |name: &str| match t.get(name) {
                    Some(x) => self.number(&format!("s_grid.{name}"), x),
                    None => {
                        self.fail("s_grid", format!("range needs '{name}'"));
                        None
                    }
                };
                let (min, max, step) = (get("min"), get("max"), get("step"));
                let (min, max, step) = (min?, max?, step?);
                if !(step > 0.0) || !(max >= min) {
                    self.fail("s_grid", "range needs step > 0 and max >= min");
                    return None;
                }
                if (max - min) / step > 100_000.0 {
                    self.fail("s_grid", "range has more than 100000 points");
                    return None;
                }
                SGrid::Range { min, max, step }
            }
            other => {
                self.fail("s_grid", format!("expected 'default', a list, or a range table, got {other}"));
                return None;
            }
        };
        let values = grid.values().unwrap_or_default();
        if values.is_empty() {
            self.fail("s_grid", "must not be empty");
            return None;
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            self.fail("s_grid", "slopes must be strictly ascending");
            return None;
        }
        if values.iter().any(|s| !s.is_finite() || s.abs() > MAX_ABS_SLOPE) {
            self.fail("s_grid", format!("slopes must lie in [-{MAX_ABS_SLOPE}, {MAX_ABS_SLOPE}]"));
            return None;
        }
        Some(grid)
    }

    fn cross_check(&mut self, cfg: &RunConfig) {
        let n = cfg.n_symbols();
        if let MembershipSpec::Inline(rows) = &cfg.membership {
            if rows[0].len() != n {
                self.fail(
                    "membership",
                    format!("rows have {} grades but the prior has {n} symbols", rows[0].len()),
                );
            }
        }
        if let Some(y) = &cfg.source_y {
            if y.len() != cfg.n_sets() {
                self.fail(
                    "source_y",
                    format!("has {} entries but there are {} sets", y.len(), cfg.n_sets()),
                );
            }
        }
        if let DistortionSpec::Inline(rows) = &cfg.distortion {
            if rows.len() != n {
                self.fail(
                    "distortion",
                    format!("has {} rows but the prior has {n} symbols", rows.len()),
                );
            }
        }
        if let PriorSpec::Inline(p) = &cfg.prior {
            if cfg.command == Command::RateCurve && p.contains(&0.0) {
                self.fail("prior", "rate-curve needs every symbol to have positive probability");
            }
        }
        if cfg.command == Command::RateDistortion && cfg.targets.is_empty() {
            if let Some(s) = cfg.s_grid.values().and_then(|v| v.into_iter().find(|&s| s > 0.0)) {
                self.fail("s_grid", format!("rate-distortion slopes must be <= 0 (got {s})"));
            }
        }
    }
}
