//! Sliding-window maintenance of the two-sample split statistics.
//!
//! The window holds the most recent `H` observations together with their
//! pairwise inner products (the window Gram matrix). Every admissible split
//! of the window into a leading group of `s` observations and a trailing
//! group of `H - s` observations yields a two-sample statistic built from
//! between- and within-group inner products. Its expectation is zero while
//! the mean is stable and becomes positive once a mean shift enters the
//! window, which is what the online stopping rules monitor.
//!
//! Each push costs `O(H·p)` for the new inner products; producing the whole
//! family of split statistics costs `O(H²)` on top of that.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::observation;
use crate::sum::Accumulator;

/// Smallest window length for which at least one split has two observations
/// in each group (the split range `2..=H-2` is nonempty and every group-size
/// denominator stays at least one).
pub const MIN_WINDOW: usize = 4;

/// Ring buffer of the last `H` observations plus their Gram matrix.
///
/// Single-writer state machine: safe to move across threads, not to share
/// mutably.
#[derive(Debug, Clone)]
pub struct WindowState {
    capacity: usize,
    dim: usize,
    /// Flattened `capacity x dim` storage, indexed by physical slot.
    buffer: Vec<f64>,
    /// Flattened `capacity x capacity` Gram matrix over physical slots;
    /// `gram[i][j] = X_i . X_j`, diagonal entries are the squared norms.
    gram: Vec<f64>,
    /// Physical slot of the oldest observation once the window is full.
    head: usize,
    len: usize,
    count: u64,
}

impl WindowState {
    pub fn new(capacity: usize, dim: usize) -> Result<Self, CoreError> {
        if capacity < MIN_WINDOW {
            return Err(CoreError::InvalidConfig(alloc::format!(
                "window length must be at least {MIN_WINDOW}, got {capacity}"
            )));
        }
        if dim == 0 {
            return Err(CoreError::InvalidConfig(
                "observation dimension must be at least 1".into(),
            ));
        }
        Ok(Self {
            capacity,
            dim,
            buffer: vec![0.0; capacity * dim],
            gram: vec![0.0; capacity * capacity],
            head: 0,
            len: 0,
            count: 0,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of observations currently held (at most the capacity).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.capacity
    }

    /// Total number of observations pushed so far.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Appends an observation, evicting the oldest one when full.
    ///
    /// Updates the Gram row/column of the incoming observation so that the
    /// split statistics derived from the stored aggregates are identical to a
    /// from-scratch evaluation over the buffer.
    pub fn push(&mut self, x: &[f64]) -> Result<(), CoreError> {
        if x.len() != self.dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        observation::validate_entries(x)?;

        let slot = if self.len < self.capacity {
            let s = self.len;
            self.len += 1;
            s
        } else {
            let s = self.head;
            self.head = (self.head + 1) % self.capacity;
            s
        };

        self.buffer[slot * self.dim..(slot + 1) * self.dim].copy_from_slice(x);
        for other in 0..self.len {
            let value = dot(self.physical(slot), self.physical(other));
            self.gram[slot * self.capacity + other] = value;
            self.gram[other * self.capacity + slot] = value;
        }
        self.count += 1;
        Ok(())
    }

    /// Observation at logical position `k` (0 = oldest in the window).
    pub fn observation(&self, k: usize) -> &[f64] {
        assert!(k < self.len, "logical index {k} out of range {}", self.len);
        self.physical(self.physical_index(k))
    }

    /// Squared norm of the observation at logical position `k`.
    pub fn sq_norm(&self, k: usize) -> f64 {
        self.gram_entry(k, k)
    }

    /// Gram entry for logical positions `(i, j)`.
    pub fn gram_entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.len && j < self.len, "logical index out of range");
        let pi = self.physical_index(i);
        let pj = self.physical_index(j);
        self.gram[pi * self.capacity + pj]
    }

    /// Evaluates the two-sample statistic for every split `s = 2..=H-2`.
    ///
    /// With the window ordered oldest-first, group one is the leading `s`
    /// observations and group two the remaining `H - s`. Off-diagonal sums
    /// count ordered pairs, so each within-group term is twice the sum over
    /// unordered pairs.
    ///
    /// Not available until the window has filled.
    pub fn compute_all_splits(&self) -> Result<SplitStatistics, CoreError> {
        if !self.is_full() {
            return Err(CoreError::WindowNotReady {
                have: self.len,
                needed: self.capacity,
            });
        }
        let h = self.capacity;

        // Gather the Gram matrix in logical (oldest-first) order once, then
        // run linear prefix scans over it.
        let mut g = vec![0.0; h * h];
        for i in 0..h {
            let pi = self.physical_index(i);
            for j in 0..h {
                let pj = self.physical_index(j);
                g[i * h + j] = self.gram[pi * self.capacity + pj];
            }
        }

        // Off-diagonal row sums and their total (ordered-pair grand total).
        let mut row = vec![0.0; h];
        let mut total = Accumulator::new();
        for i in 0..h {
            let mut acc = Accumulator::new();
            for j in 0..h {
                if j != i {
                    acc.add(g[i * h + j]);
                }
            }
            row[i] = acc.value();
            total.add(row[i]);
        }
        let total = total.value();

        // Column prefixes above the diagonal: q[k] = sum_{i<k} g[i][k].
        let mut q = vec![0.0; h];
        for k in 1..h {
            let mut acc = Accumulator::new();
            for i in 0..k {
                acc.add(g[i * h + k]);
            }
            q[k] = acc.value();
        }

        let hf = h as f64;
        let mut values = Vec::with_capacity(h - 3);
        let mut pair_prefix = Accumulator::new();
        let mut cross_prefix = Accumulator::new();
        for k in 0..h - 2 {
            pair_prefix.add(q[k]);
            cross_prefix.add(row[k] - 2.0 * q[k]);
            let s = k + 1;
            if s < 2 {
                continue;
            }
            let m1 = s as f64;
            let m2 = (h - s) as f64;
            let within_first = 2.0 * pair_prefix.value();
            let cross = cross_prefix.value();
            let within_second = total - within_first - 2.0 * cross;
            let u = (m2 / (m1 - 1.0) * within_first - 2.0 * cross
                + m1 / (m2 - 1.0) * within_second)
                / hf;
            values.push(u);
        }

        Ok(SplitStatistics {
            window: h,
            values,
        })
    }

    fn physical(&self, slot: usize) -> &[f64] {
        &self.buffer[slot * self.dim..(slot + 1) * self.dim]
    }

    fn physical_index(&self, k: usize) -> usize {
        if self.len < self.capacity {
            k
        } else {
            (self.head + k) % self.capacity
        }
    }
}

/// Per-split statistics `U_s` for `s = 2..=H-2`, oldest-first split sizes.
///
/// The window-relative split `s` is the size of the leading group; the
/// corresponding global time index at stream position `n` is `t = n - H + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitStatistics {
    window: usize,
    values: Vec<f64>,
}

impl SplitStatistics {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min_split(&self) -> usize {
        2
    }

    pub fn max_split(&self) -> usize {
        self.window - 2
    }

    /// Statistic for split `s`, if `s` lies in `2..=H-2`.
    pub fn value(&self, s: usize) -> Option<f64> {
        if s < 2 || s > self.window - 2 {
            return None;
        }
        Some(self.values[s - 2])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterates `(s, U_s)` pairs in increasing split order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &u)| (i + 2, u))
    }

    /// Sum of all split statistics.
    pub fn sum(&self) -> f64 {
        let mut acc = Accumulator::new();
        for &v in &self.values {
            acc.add(v);
        }
        acc.value()
    }

    /// Largest absolute split statistic.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(libm::fabs(*v)))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        sum += x * y;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window_from(rows: &[&[f64]], capacity: usize) -> WindowState {
        let dim = rows[0].len();
        let mut w = WindowState::new(capacity, dim).unwrap();
        for r in rows {
            w.push(r).unwrap();
        }
        w
    }

    #[test]
    fn ring_semantics_keep_last_h() {
        let mut w = WindowState::new(4, 1).unwrap();
        for i in 0..5 {
            w.push(&[i as f64]).unwrap();
        }
        assert_eq!(w.count(), 5);
        assert!(w.is_full());
        let held: Vec<f64> = (0..4).map(|k| w.observation(k)[0]).collect();
        assert_eq!(held, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn push_rejects_bad_input() {
        let mut w = WindowState::new(5, 2).unwrap();
        assert_eq!(
            w.push(&[1.0]).unwrap_err(),
            CoreError::DimensionMismatch {
                expected: 2,
                actual: 1
            }
        );
        assert_eq!(
            w.push(&[1.0, f64::NAN]).unwrap_err(),
            CoreError::NonFinite { index: 1 }
        );
    }

    #[test]
    fn zero_vector_into_empty_window_zeroes_aggregates() {
        let mut w = WindowState::new(5, 3).unwrap();
        w.push(&[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(w.sq_norm(0), 0.0);
        assert_eq!(w.gram_entry(0, 0), 0.0);
    }

    #[test]
    fn splits_require_full_window() {
        let mut w = WindowState::new(5, 1).unwrap();
        w.push(&[1.0]).unwrap();
        assert_eq!(
            w.compute_all_splits().unwrap_err(),
            CoreError::WindowNotReady { have: 1, needed: 5 }
        );
    }

    #[test]
    fn identical_observations_cancel_exactly() {
        let v: &[f64] = &[0.3, -1.2, 2.0];
        let w = window_from(&[v, v, v, v], 4);
        let splits = w.compute_all_splits().unwrap();
        assert_eq!(splits.len(), 1);
        assert_eq!(splits.value(2), Some(0.0));
    }

    #[test]
    fn orthogonal_unit_mean_shift_case() {
        // Two observations on each of two orthogonal unit vectors: the
        // noise-free split statistic equals m1*m2*delta^2/H = 2.
        let e1: &[f64] = &[1.0, 0.0];
        let e2: &[f64] = &[0.0, 1.0];
        let w = window_from(&[e1, e1, e2, e2], 4);
        let splits = w.compute_all_splits().unwrap();
        assert!((splits.value(2).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn split_count_is_h_minus_three() {
        let rows: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64, 1.0]).collect();
        let borrowed: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let w = window_from(&borrowed, 7);
        let splits = w.compute_all_splits().unwrap();
        assert_eq!(splits.len(), 4);
        assert_eq!(splits.min_split(), 2);
        assert_eq!(splits.max_split(), 5);
        assert!(splits.value(1).is_none());
        assert!(splits.value(6).is_none());
    }
}
