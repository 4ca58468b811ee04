//! Training-sample estimation of tr(Σ²) and the variance scales used to
//! standardize the split statistics.
//!
//! Under the null the statistic for split `s` has variance
//! `σ_s² = ((H-s)/(s-1) + 2 + s/(H-s-1)) · 2s(H-s) tr(Σ²) / H²`, so the only
//! covariance functional the detectors need is tr(Σ²). It is estimated by a
//! three-term U-statistic over the training sample that is unbiased under
//! i.i.d. sampling and requires no mean centering.

use alloc::vec::Vec;

use crate::error::CoreError;
use crate::observation::ObservationVector;
use crate::sum::Accumulator;
use crate::window::MIN_WINDOW;

/// Minimum training size: the fourth estimator term needs four mutually
/// distinct indices.
pub const MIN_TRAINING: usize = 4;

/// Unbiased estimator of tr(Σ²) from a training sample.
///
/// Computed from the training Gram matrix via inclusion-exclusion over row
/// sums in `O(n₀²·p)` instead of the naive `O(n₀⁴)` loops over mutually
/// distinct index tuples. Finite samples can return a (slightly) negative
/// value; callers that need positivity clamp it, see
/// [`build_training_summary`].
pub fn estimate_tr_sigma2(training: &[ObservationVector]) -> Result<f64, CoreError> {
    let n = training.len();
    if n < MIN_TRAINING {
        return Err(CoreError::InsufficientTraining {
            required: MIN_TRAINING,
            actual: n,
        });
    }
    let dim = training[0].dim();
    for obs in training {
        if obs.dim() != dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                actual: obs.dim(),
            });
        }
    }

    // Full Gram matrix of the training sample.
    let mut gram = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut dot = 0.0;
            for (x, y) in training[i].as_slice().iter().zip(training[j].as_slice()) {
                dot += x * y;
            }
            gram[i * n + j] = dot;
            gram[j * n + i] = dot;
        }
    }

    // Row sums (with diagonal), diagonal moments and the squared Frobenius
    // norm, all with compensated accumulation.
    let mut row = alloc::vec![0.0; n];
    let mut frob = Accumulator::new();
    let mut diag_sq = Accumulator::new();
    let mut diag_sum = Accumulator::new();
    let mut diag_row = Accumulator::new();
    let mut grand = Accumulator::new();
    let mut row_sq = Accumulator::new();
    let mut offdiag_row_sq = Accumulator::new();
    for i in 0..n {
        let mut acc = Accumulator::new();
        for j in 0..n {
            let v = gram[i * n + j];
            acc.add(v);
            frob.add(v * v);
        }
        row[i] = acc.value();
        grand.add(row[i]);
        row_sq.add(row[i] * row[i]);
        let d = gram[i * n + i];
        diag_sq.add(d * d);
        diag_sum.add(d);
        diag_row.add(d * row[i]);
        let u = row[i] - d;
        offdiag_row_sq.add(u * u);
    }

    let frob = frob.value();
    let diag_sq = diag_sq.value();
    // Sum over distinct pairs of squared inner products.
    let pair_term = frob - diag_sq;
    // Sum over distinct (i, j, k) of a_ij * a_jk.
    let triple_term = row_sq.value() - 2.0 * diag_row.value() - frob + 2.0 * diag_sq;
    // Sum over distinct (i, j, k, l) of a_ij * a_kl.
    let offdiag_grand = grand.value() - diag_sum.value();
    let quad_term =
        offdiag_grand * offdiag_grand - 4.0 * offdiag_row_sq.value() + 2.0 * pair_term;

    let nf = n as f64;
    let c2 = nf * (nf - 1.0);
    let c3 = c2 * (nf - 2.0);
    let c4 = c3 * (nf - 3.0);
    Ok(pair_term / c2 - 2.0 * triple_term / c3 + quad_term / c4)
}

/// Null variance of the statistic at split `s` in a window of length `H`,
/// given tr(Σ²).
pub fn sigma_s_squared(s: usize, window: usize, tr2: f64) -> Result<f64, CoreError> {
    if window < MIN_WINDOW {
        return Err(CoreError::Domain(alloc::format!(
            "window length must be at least {MIN_WINDOW}, got {window}"
        )));
    }
    if s < 2 || s > window - 2 {
        return Err(CoreError::Domain(alloc::format!(
            "split {s} outside the admissible range 2..={}",
            window - 2
        )));
    }
    if !(tr2 >= 0.0) || !tr2.is_finite() {
        return Err(CoreError::Domain(
            "tr(sigma^2) must be finite and nonnegative".into(),
        ));
    }
    let h = window as f64;
    let m1 = s as f64;
    let m2 = (window - s) as f64;
    Ok((m2 / (m1 - 1.0) + 2.0 + m1 / (m2 - 1.0)) * 2.0 * m1 * m2 * tr2 / (h * h))
}

/// Null-variance coefficient of the *sum* of all split statistics:
/// `Var(Σ_s U_s) = coefficient · tr(Σ²)` for an i.i.d. Gaussian window.
///
/// All splits are built from the same window, so their cross-covariances are
/// strongly positive and the sum's variance is far larger than the sum of
/// per-split variances (about 5.6x at H = 20 and 28x at H = 100). The sum
/// rule must standardize by this exact coefficient; standardizing by the
/// additive approximation inflates false alarms by orders of magnitude.
///
/// Evaluated exactly in `O(H²)` by accumulating, for every unordered pair of
/// window slots, the total weight the pair receives across all splits.
pub fn split_sum_variance_coefficient(window: usize) -> Result<f64, CoreError> {
    if window < MIN_WINDOW {
        return Err(CoreError::Domain(alloc::format!(
            "window length must be at least {MIN_WINDOW}, got {window}"
        )));
    }
    let h = window;
    let hf = h as f64;

    // Per-split pair weights, 1-based slots a < b, split s in 2..=H-2:
    //   both in leading group  (s >= b): 2(H-s) / (H(s-1))
    //   both in trailing group (s <  a): 2s / (H(H-s-1))
    //   straddling the split:            -2/H
    // prefix/suffix tables make the per-pair total O(1).
    let mut trailing_prefix = alloc::vec![0.0; h];
    {
        let mut acc = Accumulator::new();
        for s in 2..=h - 2 {
            acc.add(2.0 * s as f64 / (hf * (hf - s as f64 - 1.0)));
            trailing_prefix[s] = acc.value();
        }
    }
    let mut leading_suffix = alloc::vec![0.0; h + 1];
    {
        let mut acc = Accumulator::new();
        for s in (2..=h - 2).rev() {
            acc.add(2.0 * (hf - s as f64) / (hf * (s as f64 - 1.0)));
            leading_suffix[s] = acc.value();
        }
    }

    let mut total = Accumulator::new();
    for a in 1..=h - 1 {
        let trailing = if a >= 3 {
            trailing_prefix[(a - 1).min(h - 2)]
        } else {
            0.0
        };
        for b in a + 1..=h {
            let leading = if b <= h - 2 { leading_suffix[b] } else { 0.0 };
            let lo = a.max(2);
            let hi = (b - 1).min(h - 2);
            let straddle = if hi >= lo { (hi - lo + 1) as f64 } else { 0.0 };
            let w = leading + trailing - 2.0 * straddle / hf;
            total.add(w * w);
        }
    }
    Ok(total.value())
}

/// Per-split and sum standardization scales derived from a training sample.
#[derive(Debug, Clone)]
pub struct TrainingSummary {
    n0: usize,
    dim: usize,
    window: usize,
    tr2_raw: f64,
    tr2_hat: f64,
    clamped: bool,
    sigma_s_sq: Vec<f64>,
    sigma_s: Vec<f64>,
    sum_variance: f64,
    sigma_sum: f64,
}

impl TrainingSummary {
    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Estimated tr(Σ²) after the positivity clamp.
    pub fn tr2_hat(&self) -> f64 {
        self.tr2_hat
    }

    /// Raw estimator value before clamping (may be negative).
    pub fn tr2_raw(&self) -> f64 {
        self.tr2_raw
    }

    /// True when the raw estimate was negative and replaced by the floor.
    pub fn clamped(&self) -> bool {
        self.clamped
    }

    /// Standard deviation of the statistic at split `s`.
    pub fn sigma_for_split(&self, s: usize) -> Option<f64> {
        if s < 2 || s > self.window - 2 {
            return None;
        }
        Some(self.sigma_s[s - 2])
    }

    /// Per-split standard deviations for `s = 2..=H-2`.
    pub fn sigma_s(&self) -> &[f64] {
        &self.sigma_s
    }

    /// Per-split variances for `s = 2..=H-2`.
    pub fn sigma_s_squared(&self) -> &[f64] {
        &self.sigma_s_sq
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_s.iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_s.iter().fold(0.0, |m: f64, &v| m.max(v))
    }

    /// Standard deviation of the sum of all split statistics (includes the
    /// cross-split covariance terms).
    pub fn sigma_sum(&self) -> f64 {
        self.sigma_sum
    }

    /// Variance of the sum of all split statistics.
    pub fn sum_variance(&self) -> f64 {
        self.sum_variance
    }

    /// Sum of the per-split variances. Kept for diagnostics: it understates
    /// [`Self::sum_variance`] because the splits are strongly positively
    /// correlated.
    pub fn additive_sum_variance(&self) -> f64 {
        let mut acc = Accumulator::new();
        for &v in &self.sigma_s_sq {
            acc.add(v);
        }
        acc.value()
    }
}

/// Builds the standardization tables for a window of length `window` from a
/// training sample.
///
/// A negative raw tr(Σ²) estimate (possible in finite samples) is clamped to
/// a machine-epsilon-scale floor so downstream standardization stays
/// positive; the summary records that this happened.
pub fn build_training_summary(
    training: &[ObservationVector],
    window: usize,
) -> Result<TrainingSummary, CoreError> {
    if window < MIN_WINDOW {
        return Err(CoreError::InvalidConfig(alloc::format!(
            "window length must be at least {MIN_WINDOW}, got {window}"
        )));
    }
    let tr2_raw = estimate_tr_sigma2(training)?;
    let dim = training[0].dim();
    let floor = f64::EPSILON * dim as f64;
    let (tr2_hat, clamped) = if tr2_raw < floor {
        (floor, true)
    } else {
        (tr2_raw, false)
    };

    let mut sigma_s_sq = Vec::with_capacity(window - 3);
    let mut sigma_s = Vec::with_capacity(window - 3);
    for s in 2..=window - 2 {
        let v = sigma_s_squared(s, window, tr2_hat)?;
        sigma_s_sq.push(v);
        sigma_s.push(libm::sqrt(v));
    }
    let sum_variance = split_sum_variance_coefficient(window)? * tr2_hat;

    Ok(TrainingSummary {
        n0: training.len(),
        dim,
        window,
        tr2_raw,
        tr2_hat,
        clamped,
        sigma_s_sq,
        sigma_s,
        sum_variance,
        sigma_sum: libm::sqrt(sum_variance),
    })
}
