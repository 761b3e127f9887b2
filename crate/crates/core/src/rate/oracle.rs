use crate::error::{Error, Result};
use crate::measures::InfoMatrix;
use crate::prob::{MembershipMatrix, ProbVector};
use crate::real::{xlog2y, Real};

/// Upper bound on channels enumerated by [`brute_force_min_rate`].
pub const BRUTE_FORCE_MAX_EVALUATIONS: u64 = 500_000_000;

const MAX_ALPHABET: usize = 3;
const MAX_STEPS: usize = 400;

/// All points of the simplex in `dim` coordinates with denominator `steps`.
fn simplex_grid(dim: usize, steps: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if dim == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(dim - 1, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, steps, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Minimum Shannon mutual information over every channel `P(y|x)` whose rows
/// lie on a simplex grid with spacing `1 / grid_steps` and whose generalized
/// mutual information reaches `g_target`. `None` when no grid channel does.
///
/// Exhaustive, so limited to alphabets of at most three symbols.
pub fn brute_force_min_rate<T: Real>(
    prior: &ProbVector<T>,
    q: &MembershipMatrix<T>,
    g_target: T,
    grid_steps: usize,
) -> Result<Option<T>> {
    let (ni, nj) = (prior.len(), q.n_sets());
    if ni > MAX_ALPHABET || nj > MAX_ALPHABET {
        return Err(Error::TooLarge(format!(
            "brute force needs alphabets of at most {MAX_ALPHABET}, got {ni} x {nj}"
        )));
    }
    if grid_steps == 0 || grid_steps > MAX_STEPS {
        return Err(Error::Domain(format!(
            "grid steps must be in 1..={MAX_STEPS}, got {grid_steps}"
        )));
    }
    let info = InfoMatrix::from_membership(prior, q)?;
    let rows = simplex_grid(nj, grid_steps);
    let total = (rows.len() as u64).checked_pow(ni as u32);
    if total.is_none_or(|t| t > BRUTE_FORCE_MAX_EVALUATIONS) {
        return Err(Error::TooLarge(format!(
            "{} channels per row over {ni} rows exceeds {BRUTE_FORCE_MAX_EVALUATIONS}",
            rows.len()
        )));
    }
    let denom = T::from_usize(grid_steps).unwrap();
    let rows: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.iter().map(|&k| T::from_usize(k).unwrap() / denom).collect())
        .collect();
    // per-row contribution to G, indexed [i][row]
    let g_part: Vec<Vec<T>> = (0..ni)
        .map(|i| {
            let w = prior.get(i);
            rows.iter()
                .map(|r| w * r.iter().zip(info.row(i)).map(|(&p, &x)| p * x).sum::<T>())
                .collect()
        })
        .collect();
    let slack = T::lit(1e-12);
    let mut best: Option<T> = None;
    let mut idx = vec![0usize; ni];
    let mut py = vec![T::zero(); nj];
    loop {
        let g: T = idx.iter().enumerate().map(|(i, &k)| g_part[i][k]).sum();
        if g >= g_target - slack {
            py.iter_mut().for_each(|v| *v = T::zero());
            for (i, &k) in idx.iter().enumerate() {
                for (v, &p) in py.iter_mut().zip(&rows[k]) {
                    *v += prior.get(i) * p;
                }
            }
            let mut mi = T::zero();
            for (i, &k) in idx.iter().enumerate() {
                let inner: T = rows[k]
                    .iter()
                    .zip(&py)
                    .map(|(&p, &m)| if p > T::zero() { xlog2y(p, p / m) } else { T::zero() })
                    .sum();
                mi += prior.get(i) * inner;
            }
            best = Some(best.map_or(mi, |b| b.min(mi)));
        }
        let mut pos = 0;
        loop {
            if pos == ni {
                return Ok(best.map(|b| b.max(T::zero())));
            }
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
