//! CSV and run-summary writers.
//!
//! CSV files are plain ASCII with `,` separators and LF line ends. Numbers
//! carry at most 12 significant digits and never depend on the locale.

use std::fs;
use std::io;
use std::path::Path;

use crate::config::RunConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `v` with at most 12 significant digits, plain notation for moderate
/// magnitudes and `e` notation otherwise.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        // reparse the rounded value so the digit count matches `sci`
        let rounded: f64 = sci.parse().unwrap();
        let s = format!("{rounded:.decimals$}");
        trim_zeros(&s)
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// First CSV line, recording how the file was produced.
pub fn provenance(cfg: &RunConfig) -> String {
    let d = match cfg.command {
        crate::config::Command::Fig5 => cfg
            .d_list
            .iter()
            .map(|&x| fmt_num(x))
            .collect::<Vec<_>>()
            .join(";"),
        _ => fmt_num(cfg.d),
    };
    let k = match cfg.command {
        crate::config::Command::Fig6 => cfg
            .k_list
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        _ => cfg.k.to_string(),
    };
    format!(
        "# toolversion={TOOL_VERSION},command={},k={k},d={d},seed={}\n",
        cfg.command, cfg.seed
    )
}

/// Renders a table under the provenance line.
pub fn render_csv(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut buf = provenance(cfg).into_bytes();
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut buf);
        w.write_record(header).expect("writing to memory");
        for r in rows {
            w.write_record(r).expect("writing to memory");
        }
        w.flush().expect("writing to memory");
    }
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn write_file(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, contents)
}
