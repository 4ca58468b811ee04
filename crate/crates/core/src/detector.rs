//! Online stopping rules over the sliding window.
//!
//! Two rules are supported. The max-type rule stops when any standardized
//! split statistic exceeds its threshold in absolute value; the sum-type rule
//! stops when the standardized sum of all split statistics does. Both are
//! two-sided and use strict inequality, so a statistic exactly at the
//! threshold keeps monitoring.

use alloc::vec::Vec;

use crate::error::CoreError;
use crate::observation::ObservationVector;
use crate::theory::MIN_THEORY_WINDOW;
use crate::variance::{build_training_summary, TrainingSummary, MIN_TRAINING};
use crate::window::{SplitStatistics, WindowState};

/// Which statistic drives the stopping decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Largest standardized split statistic in the window.
    Max,
    /// Standardized sum of all split statistics.
    Sum,
}

impl RuleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleKind::Max => "max",
            RuleKind::Sum => "sum",
        }
    }
}

impl core::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for RuleKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(RuleKind::Max),
            "sum" => Ok(RuleKind::Sum),
            other => Err(CoreError::InvalidConfig(alloc::format!(
                "unknown rule {other:?}, expected \"max\" or \"sum\""
            ))),
        }
    }
}

/// Static configuration of one detector instance.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    pub rule: RuleKind,
    /// Window length H.
    pub window: usize,
    /// Training sample size n0.
    pub training: usize,
    /// Observation dimension p.
    pub dim: usize,
    /// Standardized threshold (a for the max rule, b for the sum rule).
    pub threshold: f64,
    /// Record the per-step statistic; costs one value per step.
    pub record_trajectory: bool,
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.window < MIN_THEORY_WINDOW {
            return Err(CoreError::InvalidConfig(alloc::format!(
                "window length must be at least {MIN_THEORY_WINDOW}, got {}",
                self.window
            )));
        }
        if self.training < MIN_TRAINING {
            return Err(CoreError::InvalidConfig(alloc::format!(
                "training size must be at least {MIN_TRAINING}, got {}",
                self.training
            )));
        }
        if self.dim == 0 {
            return Err(CoreError::InvalidConfig(
                "observation dimension must be at least 1".into(),
            ));
        }
        if !self.threshold.is_finite() || self.threshold <= 0.0 {
            return Err(CoreError::InvalidConfig(alloc::format!(
                "threshold must be positive and finite, got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// Outcome of one monitoring step.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    /// The window has not filled yet; no statistic is available.
    NotReady,
    /// Statistic computed and below the threshold.
    Continue { statistic: f64 },
    /// The rule fired.
    Stop(DetectionReport),
}

/// What the detector reports, either at the stop or at end of stream.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionReport {
    pub stopped: bool,
    /// Observations after training at the stop (at least 1); `None` when the
    /// stream ended without a stop.
    pub stopping_time: Option<u64>,
    /// Monitoring steps processed so far.
    pub steps_processed: u64,
    /// Standardized statistic at the stop, or the last one computed.
    pub trigger_statistic: Option<f64>,
    /// Window-relative split of the triggering statistic (max rule only).
    pub trigger_split: Option<usize>,
    /// Global time index of the triggering split, `t = n - H + s`.
    pub trigger_index: Option<u64>,
    /// Largest absolute unstandardized split statistic at the reported step.
    pub raw_max_abs: Option<f64>,
    /// Absolute unstandardized sum of split statistics at the reported step.
    pub raw_abs_sum: Option<f64>,
    pub threshold: f64,
    /// Per-step statistic values, when recording was enabled.
    pub trajectory: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
struct Evaluation {
    statistic: f64,
    split: usize,
    raw_max_abs: f64,
    raw_abs_sum: f64,
}

/// Online state machine applying one stopping rule to a stream.
///
/// Single-writer: an instance can move between threads but must not be
/// mutated concurrently. All operations are deterministic in their inputs.
#[derive(Debug, Clone)]
pub struct Detector {
    config: DetectorConfig,
    summary: TrainingSummary,
    window: WindowState,
    steps: u64,
    stopped: bool,
    last_eval: Option<Evaluation>,
    trajectory: Vec<f64>,
}

impl Detector {
    /// Builds the standardization tables from the training sample and seeds
    /// the window with its tail.
    ///
    /// The training sample must hold exactly `config.training` observations
    /// of dimension `config.dim`. The window is pre-filled with the last
    /// `min(H, n0)` training observations, so with `n0 >= H` the first
    /// monitored step already produces a statistic; with fewer, monitoring
    /// starts once the window fills.
    pub fn new(config: DetectorConfig, training: &[ObservationVector]) -> Result<Self, CoreError> {
        config.validate()?;
        if training.len() < config.training {
            return Err(CoreError::InsufficientTraining {
                required: config.training,
                actual: training.len(),
            });
        }
        if training.len() != config.training {
            return Err(CoreError::InvalidConfig(alloc::format!(
                "expected exactly {} training observations, got {}",
                config.training,
                training.len()
            )));
        }
        for obs in training {
            if obs.dim() != config.dim {
                return Err(CoreError::DimensionMismatch {
                    expected: config.dim,
                    actual: obs.dim(),
                });
            }
        }
        let summary = build_training_summary(training, config.window)?;
        let mut window = WindowState::new(config.window, config.dim)?;
        let seed_from = training.len().saturating_sub(config.window);
        for obs in &training[seed_from..] {
            window.push(obs.as_slice())?;
        }
        Ok(Self {
            config,
            summary,
            window,
            steps: 0,
            stopped: false,
            last_eval: None,
            trajectory: Vec::new(),
        })
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    pub fn training_summary(&self) -> &TrainingSummary {
        &self.summary
    }

    /// Monitoring steps taken so far (`n - n0`).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_stopped(&self) -> bool {
        self.stopped
    }

    /// Recorded per-step statistics (empty unless enabled).
    pub fn trajectory(&self) -> &[f64] {
        &self.trajectory
    }

    /// Feeds the next observation and applies the stopping rule.
    pub fn step(&mut self, x: &[f64]) -> Result<StepOutcome, CoreError> {
        if self.stopped {
            return Err(CoreError::AlreadyStopped);
        }
        self.window.push(x)?;
        self.steps += 1;
        if !self.window.is_full() {
            return Ok(StepOutcome::NotReady);
        }
        let splits = self.window.compute_all_splits()?;
        let eval = self.evaluate(&splits);
        self.last_eval = Some(eval);
        if self.config.record_trajectory {
            self.trajectory.push(eval.statistic);
        }
        if eval.statistic > self.config.threshold {
            self.stopped = true;
            let trigger_split = match self.config.rule {
                RuleKind::Max => Some(eval.split),
                RuleKind::Sum => None,
            };
            // Global stream position of the current step, training included.
            let n = self.config.training as u64 + self.steps;
            let trigger_index = trigger_split
                .map(|s| n - self.config.window as u64 + s as u64);
            return Ok(StepOutcome::Stop(DetectionReport {
                stopped: true,
                stopping_time: Some(self.steps),
                steps_processed: self.steps,
                trigger_statistic: Some(eval.statistic),
                trigger_split,
                trigger_index,
                raw_max_abs: Some(eval.raw_max_abs),
                raw_abs_sum: Some(eval.raw_abs_sum),
                threshold: self.config.threshold,
                trajectory: self.recorded(),
            }));
        }
        Ok(StepOutcome::Continue {
            statistic: eval.statistic,
        })
    }

    /// Report for a stream that ended without a stop.
    pub fn final_report(&self) -> DetectionReport {
        DetectionReport {
            stopped: self.stopped,
            stopping_time: self.stopped.then_some(self.steps),
            steps_processed: self.steps,
            trigger_statistic: self.last_eval.map(|e| e.statistic),
            trigger_split: None,
            trigger_index: None,
            raw_max_abs: self.last_eval.map(|e| e.raw_max_abs),
            raw_abs_sum: self.last_eval.map(|e| e.raw_abs_sum),
            threshold: self.config.threshold,
            trajectory: self.recorded(),
        }
    }

    fn recorded(&self) -> Option<Vec<f64>> {
        self.config
            .record_trajectory
            .then(|| self.trajectory.clone())
    }

    fn evaluate(&self, splits: &SplitStatistics) -> Evaluation {
        let raw_max_abs = splits.max_abs();
        let raw_abs_sum = libm::fabs(splits.sum());
        match self.config.rule {
            RuleKind::Max => {
                let mut best = f64::NEG_INFINITY;
                let mut best_split = splits.min_split();
                for (s, u) in splits.iter() {
                    let sigma = self.summary.sigma_for_split(s).expect("split in range");
                    let standardized = libm::fabs(u) / sigma;
                    if standardized > best {
                        best = standardized;
                        best_split = s;
                    }
                }
                Evaluation {
                    statistic: best,
                    split: best_split,
                    raw_max_abs,
                    raw_abs_sum,
                }
            }
            RuleKind::Sum => Evaluation {
                statistic: raw_abs_sum / self.summary.sigma_sum(),
                split: 0,
                raw_max_abs,
                raw_abs_sum,
            },
        }
    }
}
