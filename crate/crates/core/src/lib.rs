//! Streaming detection of mean shifts in high-dimensional data.
//!
//! The crate maintains a sliding window of the most recent observations and
//! monitors two-sample inner-product statistics over every split of that
//! window. Two online stopping rules are provided — one driven by the
//! largest standardized split statistic, one by their standardized sum —
//! together with the analytic average-run-length formulas used to calibrate
//! their thresholds and the expected-detection-delay expressions used to
//! assess them.
//!
//! The crate is `no_std` (with `alloc`); all floating-point special
//! functions come from `libm`. IO, random stream generation and the command
//! line live in the companion `hdcd` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod detector;
pub mod error;
pub mod observation;
mod quad;
mod sum;
pub mod theory;
pub mod variance;
pub mod window;

pub use detector::{DetectionReport, Detector, DetectorConfig, RuleKind, StepOutcome};
pub use error::CoreError;
pub use observation::ObservationVector;
pub use theory::{ChangeSpec, TheoryParams};
pub use variance::{
    build_training_summary, estimate_tr_sigma2, sigma_s_squared,
    split_sum_variance_coefficient, TrainingSummary,
};
pub use window::{SplitStatistics, WindowState, MIN_WINDOW};
