//! Compensated (Neumaier) summation for the window aggregates.

/// Running sum that tracks a first-order error term, so that long prefix
/// accumulations stay accurate enough for the 1e-10 oracle tolerances.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if abs(self.sum) >= abs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[inline]
fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
