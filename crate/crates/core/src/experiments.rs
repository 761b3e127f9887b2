//! Gray-level image experiments: rate-fidelity curves across discrimination
//! widths, and the matching information across digitized bits.

use rayon::prelude::*;

use crate::discrimination::{
    gaussian_membership, gray_level_source, max_level_for_bits, GaussianDiscriminationSpec,
};
use crate::error::{Error, Result};
use crate::rate::{
    rate_fidelity_curve, rate_fidelity_point_from, CurveMode, FidelityProblem, RateCurve,
    RatePoint, SolverOptions,
};
use crate::real::Real;

/// Bits per pixel accepted by [`fig6_experiment`]; beyond this the
/// alphabets get too large for dense Newton steps.
pub const MAX_EXPERIMENT_BITS: u32 = 10;

/// Increment below which the matching information counts as flat.
pub const PLATEAU_THRESHOLD: f64 = 0.02;

/// Gray level of the reference scale on which `d` is measured by default.
pub const REFERENCE_MAX_LEVEL: u32 = 63;

const GOLDEN_TOL: f64 = 1e-4;

/// Point of a rate-fidelity curve where `R - G` is smallest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingPoint<T> {
    pub s_star: T,
    pub g_star: T,
    pub r_star: T,
    /// `r_star - g_star`.
    pub gap: T,
    /// The minimum sat on the first or last converged grid point, so it
    /// may lie outside the curve.
    pub boundary: bool,
}

/// Locates the minimizer of `r - g` over a solved curve by golden-section
/// search on `s` between the grid neighbours of the best grid point.
pub fn find_matching_point<T: Real>(
    problem: &FidelityProblem<T>,
    curve: &RateCurve<T>,
    opts: &SolverOptions<T>,
) -> Result<MatchingPoint<T>> {
    let pts: Vec<&RatePoint<T>> = curve.points.iter().filter(|p| p.converged).collect();
    if pts.len() < 3 {
        return Err(Error::NotConverged(format!(
            "matching point needs 3 converged points, curve has {}",
            pts.len()
        )));
    }
    let gap = |p: &RatePoint<T>| p.r - p.g;
    let m = (0..pts.len())
        .min_by(|&a, &b| gap(pts[a]).partial_cmp(&gap(pts[b])).unwrap())
        .unwrap();
    let summary = |p: &RatePoint<T>, boundary| MatchingPoint {
        s_star: p.s,
        g_star: p.g,
        r_star: p.r,
        gap: gap(p),
        boundary,
    };
    if m == 0 || m == pts.len() - 1 {
        return Ok(summary(pts[m], true));
    }

    let init = pts[m].output_dist.as_slice().to_vec();
    let eval = |s: T| -> Result<RatePoint<T>> { rate_fidelity_point_from(problem, s, &init, opts) };
    let score = |p: &RatePoint<T>| if p.converged { gap(p) } else { T::infinity() };

    let ratio = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let (mut a, mut b) = (pts[m - 1].s, pts[m + 1].s);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut pc = eval(c)?;
    let mut pd = eval(d)?;
    while b - a > T::lit(GOLDEN_TOL) {
        if score(&pc) <= score(&pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - ratio * (b - a);
            pc = eval(c)?;
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + ratio * (b - a);
            pd = eval(d)?;
        }
    }
    let best = [pts[m], &pc, &pd]
        .into_iter()
        .filter(|p| p.converged)
        .min_by(|x, y| gap(x).partial_cmp(&gap(y)).unwrap())
        .unwrap();
    Ok(summary(best, false))
}

/// One point of one curve in an experiment table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRow<T> {
    pub d: T,
    pub k: u32,
    pub s: T,
    pub g: T,
    pub r: T,
    pub converged: bool,
}

/// Outcome of a qualitative assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_owned(),
            passed,
            detail,
        }
    }
}

/// How the discrimination width `d` is converted to gray levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscriminationScale {
    /// `d` is in gray levels of the image being coded.
    GrayLevels,
    /// `d` is in gray levels of an image with this maximum level, and is
    /// rescaled to the coded image: `d * b / max_level`. This keeps the
    /// viewer's acuity fixed as the number of bits changes.
    Reference(u32),
}

impl Default for DiscriminationScale {
    fn default() -> Self {
        Self::Reference(REFERENCE_MAX_LEVEL)
    }
}

impl DiscriminationScale {
    fn to_levels<T: Real>(self, d: T, max_level: u32) -> T {
        match self {
            Self::GrayLevels => d,
            Self::Reference(m) => d * T::lit(max_level as f64) / T::lit(m as f64),
        }
    }
}

/// Gray-level source of `k` bits with Gaussian discrimination of width
/// `d` gray levels.
pub fn gray_level_problem<T: Real>(k: u32, d: T) -> Result<FidelityProblem<T>> {
    let prior = gray_level_source(k)?;
    let spec = GaussianDiscriminationSpec::for_bits(k, d)?;
    FidelityProblem::new(prior, gaussian_membership(&spec))
}

/// A solved curve with its matching point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSummary<T> {
    pub d: T,
    pub curve: RateCurve<T>,
    pub matching: MatchingPoint<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig5Report<T> {
    pub k: u32,
    /// One entry per `d`, in the order given.
    pub curves: Vec<CurveSummary<T>>,
    pub checks: Vec<Check>,
}

impl<T: Real> Fig5Report<T> {
    /// Curve points in `d` order, then `s` order.
    pub fn rows(&self) -> Vec<ExperimentRow<T>> {
        self.curves
            .iter()
            .flat_map(|c| {
                c.curve.points.iter().map(move |p| ExperimentRow {
                    d: c.d,
                    k: self.k,
                    s: p.s,
                    g: p.g,
                    r: p.r,
                    converged: p.converged,
                })
            })
            .collect()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Rate-fidelity curves of a `k`-bit gray-level source, one per `d`
/// (in gray levels), with the qualitative checks of the curve family.
pub fn fig5_experiment<T: Real>(
    k: u32,
    d_list: &[T],
    s_grid: &[T],
    opts: &SolverOptions<T>,
) -> Result<Fig5Report<T>> {
    if d_list.is_empty() {
        return Err(Error::Empty { what: "d list" });
    }
    if let Some(d) = d_list.iter().find(|d| !(**d > T::zero())) {
        return Err(Error::Domain(format!("d must be positive, got {d}")));
    }
    let curves = d_list
        .par_iter()
        .map(|&d| -> Result<CurveSummary<T>> {
            let problem = gray_level_problem(k, d)?;
            let curve = rate_fidelity_curve(&problem, s_grid, CurveMode::WarmStart, opts)?;
            let matching = find_matching_point(&problem, &curve, opts)?;
            Ok(CurveSummary { d, curve, matching })
        })
        .collect::<Result<Vec<_>>>()?;
    let checks = fig5_checks(&curves);
    Ok(Fig5Report { k, curves, checks })
}

fn fig5_checks<T: Real>(curves: &[CurveSummary<T>]) -> Vec<Check> {
    let tiny = T::lit(1e-9);
    let mut checks = Vec::new();

    let converged: Vec<String> = curves
        .iter()
        .filter(|c| !c.curve.all_converged())
        .map(|c| format!("d={}", c.d))
        .collect();
    checks.push(Check::new(
        "all_points_converged",
        converged.is_empty(),
        if converged.is_empty() {
            "every point converged".into()
        } else {
            format!("non-converged points on {}", converged.join(" "))
        },
    ));

    let mut zero_ok = true;
    let mut zero_detail = Vec::new();
    for c in curves {
        match c.curve.points.iter().find(|p| p.s == T::zero()) {
            Some(p) => {
                zero_ok &= p.r.abs() < tiny && p.g < T::zero();
                zero_detail.push(format!("d={}: R={:.3e} G={:.6}", c.d, p.r.as_f64(), p.g.as_f64()));
            }
            None => {
                zero_ok = false;
                zero_detail.push(format!("d={}: grid lacks s=0", c.d));
            }
        }
    }
    checks.push(Check::new("zero_slope_r0_g_negative", zero_ok, zero_detail.join("; ")));

    let worst_gap = curves
        .iter()
        .map(|c| c.matching.gap)
        .fold(T::neg_infinity(), T::max);
    checks.push(Check::new(
        "matching_gap_below_1e-3",
        worst_gap < T::lit(1e-3) && curves.iter().all(|c| !c.matching.boundary),
        format!("largest gap {:.3e} bits", worst_gap.as_f64()),
    ));

    let mut by_d: Vec<&CurveSummary<T>> = curves.iter().collect();
    by_d.sort_by(|a, b| a.d.partial_cmp(&b.d).unwrap());
    let decreasing = by_d
        .windows(2)
        .all(|w| w[1].d > w[0].d && w[1].matching.g_star < w[0].matching.g_star);
    checks.push(Check::new(
        "matching_g_decreasing_in_d",
        decreasing,
        by_d.iter()
            .map(|c| format!("d={}: {:.6}", c.d, c.matching.g_star.as_f64()))
            .collect::<Vec<_>>()
            .join("; "),
    ));

    let sharpest = by_d[0];
    let r_at = sharpest.curve.interpolate_r(T::lit(-2.0));
    checks.push(Check::new(
        "rate_positive_at_g_minus_2",
        r_at.is_some_and(|r| r > T::zero()),
        match r_at {
            Some(r) => format!("d={}: R={:.6}", sharpest.d, r.as_f64()),
            None => format!("d={}: G=-2 not covered by the curve", sharpest.d),
        },
    ));

    let mut below = Vec::new();
    for c in curves {
        for p in c.curve.points.iter().filter(|p| p.converged && p.s >= T::zero()) {
            if p.r < p.g - tiny {
                below.push(format!("d={} s={}", c.d, p.s));
            }
        }
    }
    checks.push(Check::new(
        "rate_at_least_fidelity",
        below.is_empty(),
        if below.is_empty() {
            "R >= G at every converged point".into()
        } else {
            format!("R < G at {}", below.join(", "))
        },
    ));

    let violations: Vec<String> = curves
        .iter()
        .flat_map(|c| {
            c.curve
                .invariant_violations()
                .into_iter()
                .map(move |v| format!("d={}: {v}", c.d))
        })
        .collect();
    checks.push(Check::new(
        "curve_shape",
        violations.is_empty(),
        if violations.is_empty() {
            "monotone with consistent chord slopes".into()
        } else {
            violations.join("; ")
        },
    ));
    checks
}

/// Matching point for one digitized-bit setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig6Row<T> {
    pub k: u32,
    /// `d` in gray levels of the `k`-bit image.
    pub d_levels: T,
    pub matching: MatchingPoint<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig6Report<T> {
    pub d: T,
    pub scale: DiscriminationScale,
    pub rows: Vec<Fig6Row<T>>,
    /// Smallest `k'` whose successors all stay within the plateau
    /// threshold of it; `None` when only the last `k` qualifies.
    pub plateau_k: Option<u32>,
    /// `k` with the largest matching information.
    pub optimal_k: u32,
    pub checks: Vec<Check>,
}

impl<T: Real> Fig6Report<T> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Slopes searched for the matching point of each `k`.
pub fn fig6_s_grid<T: Real>() -> Vec<T> {
    [0.5, 0.75, 1.0, 1.25, 1.5].into_iter().map(T::lit).collect()
}

/// Matching information of the gray-level source as the number of bits
/// per pixel grows, for a fixed discrimination width.
pub fn fig6_experiment<T: Real>(
    d: T,
    k_list: &[u32],
    scale: DiscriminationScale,
    opts: &SolverOptions<T>,
) -> Result<Fig6Report<T>> {
    if !(d > T::zero()) {
        return Err(Error::Domain(format!("d must be positive, got {d}")));
    }
    if k_list.is_empty() {
        return Err(Error::Empty { what: "k list" });
    }
    if k_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("k list must be strictly ascending".into()));
    }
    if let Some(&k) = k_list.iter().find(|&&k| k > MAX_EXPERIMENT_BITS) {
        return Err(Error::TooLarge(format!(
            "k = {k} exceeds {MAX_EXPERIMENT_BITS} bits"
        )));
    }
    if scale == DiscriminationScale::Reference(0) {
        return Err(Error::Domain("reference scale needs a positive level".into()));
    }
    let grid = fig6_s_grid();
    let rows = k_list
        .par_iter()
        .map(|&k| -> Result<Fig6Row<T>> {
            let d_levels = scale.to_levels(d, max_level_for_bits(k)?);
            let problem = gray_level_problem(k, d_levels)?;
            let curve = rate_fidelity_curve(&problem, &grid, CurveMode::WarmStart, opts)?;
            let matching = find_matching_point(&problem, &curve, opts)?;
            Ok(Fig6Row { k, d_levels, matching })
        })
        .collect::<Result<Vec<_>>>()?;

    let g: Vec<T> = rows.iter().map(|r| r.matching.g_star).collect();
    let threshold = T::lit(PLATEAU_THRESHOLD);
    let plateau_idx =
        (0..g.len()).find(|&a| g[a + 1..].iter().all(|&later| later - g[a] < threshold));
    let plateau_k = plateau_idx
        .filter(|&a| a + 1 < g.len())
        .map(|a| rows[a].k);
    let optimal_idx = (0..g.len())
        .max_by(|&a, &b| g[a].partial_cmp(&g[b]).unwrap().then(b.cmp(&a)))
        .unwrap();

    let listing = rows
        .iter()
        .map(|r| format!("k={}: {:.6}", r.k, r.matching.g_star.as_f64()))
        .collect::<Vec<_>>()
        .join("; ");
    let drops: Vec<String> = rows
        .windows(2)
        .filter(|w| w[1].matching.g_star < w[0].matching.g_star - T::lit(1e-6))
        .map(|w| {
            format!(
                "k={}->{}: {:.6}",
                w[0].k,
                w[1].k,
                (w[1].matching.g_star - w[0].matching.g_star).as_f64()
            )
        })
        .collect();
    let mut checks = vec![
        Check::new(
            "matching_g_nondecreasing_in_k",
            drops.is_empty(),
            if drops.is_empty() {
                listing.clone()
            } else {
                format!("drops {}", drops.join(", "))
            },
        ),
        Check::new(
            "plateau_detected",
            plateau_k.is_some(),
            match plateau_k {
                Some(k) => format!("flat within {PLATEAU_THRESHOLD} bits from k'={k}"),
                None => format!("no plateau before the last k; {listing}"),
            },
        ),
        Check::new(
            "matching_gap_below_1e-3",
            rows.iter()
                .all(|r| r.matching.gap < T::lit(1e-3) && !r.matching.boundary),
            rows.iter()
                .map(|r| format!("k={}: {:.3e}", r.k, r.matching.gap.as_f64()))
                .collect::<Vec<_>>()
                .join("; "),
        ),
    ];
    if let Some(r) = rows.iter().find(|r| r.k == 1) {
        checks.push(Check::new(
            "binary_source_at_most_one_bit",
            r.matching.g_star <= T::one() + T::lit(1e-6),
            format!("g*={:.9}", r.matching.g_star.as_f64()),
        ));
    }

    Ok(Fig6Report {
        d,
        scale,
        rows,
        plateau_k,
        optimal_k: k_list[optimal_idx],
        checks,
    })
}
