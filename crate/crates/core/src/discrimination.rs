//! Builders for membership matrices and the gray-level source.
//!
//! Gray levels run over `0..=b` with `b = 2^k - 1`, both for the source
//! symbol `x` and for the perceived level `y`.

use crate::error::{Error, Result};
use crate::prob::{MembershipMatrix, ProbVector};
use crate::real::{Real, MEMBERSHIP_FLOOR};

/// Largest supported bit depth.
pub const MAX_BITS: u32 = 16;

/// Gaussian confusion kernel over gray levels `0..=max_level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianDiscriminationSpec<T> {
    max_level: u32,
    d: T,
}

impl<T: Real> GaussianDiscriminationSpec<T> {
    /// `d` is the kernel width in gray-level units; smaller is sharper.
    pub fn new(max_level: u32, d: T) -> Result<Self> {
        if max_level < 1 {
            return Err(Error::Domain("max gray level must be at least 1".into()));
        }
        if !(d > T::zero()) || !d.is_finite() {
            return Err(Error::Domain(format!(
                "discrimination parameter d must be positive, got {d}"
            )));
        }
        Ok(Self { max_level, d })
    }

    /// Spec for `k` bits per pixel, i.e. `b = 2^k - 1`.
    pub fn for_bits(k: u32, d: T) -> Result<Self> {
        Self::new(max_level_for_bits(k)?, d)
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn d(&self) -> T {
        self.d
    }
}

/// `b = 2^k - 1` for `1 <= k <= 16`.
pub fn max_level_for_bits(k: u32) -> Result<u32> {
    if !(1..=MAX_BITS).contains(&k) {
        return Err(Error::Domain(format!(
            "bit depth k must lie in 1..={MAX_BITS}, got {k}"
        )));
    }
    Ok((1u32 << k) - 1)
}

/// `Q(A_j | x_i) = exp(-(i - j)^2 / (2 d^2))`, floored at the membership floor.
/// Row `j` is the confusion function of level `j`; the diagonal is exactly one.
pub fn gaussian_membership<T: Real>(spec: &GaussianDiscriminationSpec<T>) -> MembershipMatrix<T> {
    let n = spec.max_level as usize + 1;
    let two_d2 = T::lit(2.0) * spec.d * spec.d;
    let floor = T::lit(MEMBERSHIP_FLOOR);
    let mut data = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let diff = T::lit(i as f64 - j as f64);
            data.push((-(diff * diff) / two_d2).exp().max(floor));
        }
    }
    MembershipMatrix::from_flat(n, n, data).expect("gaussian kernel is a valid membership matrix")
}

/// Indicator rows of clear confusion sets observed in repeated trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClearSetSample {
    n_symbols: usize,
    indicators: Vec<u8>,
}

impl ClearSetSample {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty {
                what: "clear set sample",
            });
        }
        let n_symbols = rows[0].len();
        if n_symbols == 0 {
            return Err(Error::Empty {
                what: "clear set indicator row",
            });
        }
        let mut indicators = Vec::with_capacity(rows.len() * n_symbols);
        for row in rows {
            if row.len() != n_symbols {
                return Err(Error::DimensionMismatch {
                    what: "clear set indicator row",
                    expected: n_symbols,
                    got: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&v| v > 1) {
                return Err(Error::Domain(format!("indicator entry {bad} is not 0 or 1")));
            }
            indicators.extend(row);
        }
        Ok(Self {
            n_symbols,
            indicators,
        })
    }

    pub fn n_trials(&self) -> usize {
        self.indicators.len() / self.n_symbols
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }
}

/// Membership row estimated as the fraction of trials whose clear set
/// contained each symbol.
pub fn empirical_membership<T: Real>(samples: &ClearSetSample) -> Vec<T> {
    let n = samples.n_trials();
    let mut counts = vec![0usize; samples.n_symbols];
    for trial in samples.indicators.chunks_exact(samples.n_symbols) {
        for (c, &v) in counts.iter_mut().zip(trial) {
            *c += v as usize;
        }
    }
    counts
        .into_iter()
        .map(|c| T::lit(c as f64) / T::lit(n as f64))
        .collect()
}

/// Discretized normal source over gray levels `0..=b` with mean `b/2` and
/// standard deviation `b/8`, sampled at integer levels and renormalized.
pub fn gray_level_source<T: Real>(k: u32) -> Result<ProbVector<T>> {
    let b = max_level_for_bits(k)? as f64;
    let mean = b / 2.0;
    let sd = b / 8.0;
    let weights = (0..=b as usize)
        .map(|i| {
            let z = (i as f64 - mean) / sd;
            T::lit((-0.5 * z * z).exp())
        })
        .collect();
    ProbVector::normalized(weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_diagonal_and_width() {
        let spec = GaussianDiscriminationSpec::new(63, 4.0f64).unwrap();
        let q = gaussian_membership(&spec);
        assert_eq!((q.n_sets(), q.n_symbols()), (64, 64));
        for j in 0..64 {
            assert_eq!(q.grade(j, j), 1.0);
        }
        assert!((q.grade(10, 14) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((q.grade(14, 10) - 0.60653).abs() < 1e-5);
        // far tails sit at the floor rather than underflowing to zero
        assert_eq!(q.grade(0, 63), MEMBERSHIP_FLOOR);
    }

    #[test]
    fn gaussian_tends_to_identity() {
        let q = gaussian_membership(&GaussianDiscriminationSpec::new(63, 0.05f64).unwrap());
        for j in 0..64 {
            for i in 0..64 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((q.grade(j, i) - want).abs() <= MEMBERSHIP_FLOOR);
            }
        }
    }

    #[test]
    fn gaussian_spec_rejects_bad_d() {
        assert!(GaussianDiscriminationSpec::new(63, 0.0f64).is_err());
        assert!(GaussianDiscriminationSpec::new(63, -1.0f64).is_err());
        assert!(GaussianDiscriminationSpec::new(0, 1.0f64).is_err());
        assert!(GaussianDiscriminationSpec::for_bits(17, 1.0f64).is_err());
    }

    #[test]
    fn empirical_examples() {
        let s = ClearSetSample::new(vec![vec![1, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(empirical_membership::<f64>(&s), vec![1.0, 0.5, 0.0]);
        let s = ClearSetSample::new(vec![vec![0, 1, 0]]).unwrap();
        assert_eq!(empirical_membership::<f64>(&s), vec![0.0, 1.0, 0.0]);
        let r = vec![1, 0, 1, 1];
        let s = ClearSetSample::new(vec![r.clone(); 4]).unwrap();
        assert_eq!(empirical_membership::<f64>(&s), vec![1.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn empirical_rejects_bad_samples() {
        assert!(ClearSetSample::new(vec![]).is_err());
        assert!(ClearSetSample::new(vec![vec![1, 2]]).is_err());
        assert!(ClearSetSample::new(vec![vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn gray_source_examples() {
        let p = gray_level_source::<f64>(1).unwrap();
        assert_eq!(p.as_slice(), &[0.5, 0.5]);

        let p = gray_level_source::<f64>(6).unwrap();
        assert_eq!(p.len(), 64);
        assert!((p.get(31) - p.get(32)).abs() < 1e-15);
        let argmax = (0..64).max_by(|&a, &b| p.get(a).total_cmp(&p.get(b))).unwrap();
        assert!(argmax == 31 || argmax == 32);

        assert!(gray_level_source::<f64>(0).is_err());
        assert!(gray_level_source::<f64>(17).is_err());
    }
}
