//! Error type shared across the core modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by window maintenance, estimation, run-length theory and
/// the online detectors.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// An observation's length does not match the configured dimension.
    DimensionMismatch { expected: usize, actual: usize },
    /// An observation carries a NaN or infinite entry at the given position.
    NonFinite { index: usize },
    /// A configuration parameter is outside its valid range.
    InvalidConfig(String),
    /// Fewer training observations than the operation requires.
    InsufficientTraining { required: usize, actual: usize },
    /// The sliding window has not yet seen enough observations.
    WindowNotReady { have: usize, needed: usize },
    /// A function argument lies outside its mathematical domain.
    Domain(String),
    /// Quadrature could not reach the requested relative accuracy.
    Quadrature { requested: f64, achieved: f64 },
    /// Threshold calibration failed to bracket or converge on a root.
    Calibration(String),
    /// A numeric routine failed to converge.
    NonConvergence(String),
    /// `step` was called on a detector that has already stopped.
    AlreadyStopped,
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::DimensionMismatch { expected, actual } => {
                write!(f, "dimension mismatch: expected {expected} entries, got {actual}")
            }
            CoreError::NonFinite { index } => {
                write!(f, "non-finite value at position {index}")
            }
            CoreError::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            CoreError::InsufficientTraining { required, actual } => {
                write!(f, "insufficient training data: need at least {required} observations, got {actual}")
            }
            CoreError::WindowNotReady { have, needed } => {
                write!(f, "window not ready: holds {have} of {needed} observations")
            }
            CoreError::Domain(msg) => write!(f, "domain error: {msg}"),
            CoreError::Quadrature { requested, achieved } => {
                write!(f, "quadrature did not converge: requested relative tolerance {requested:e}, achieved {achieved:e}")
            }
            CoreError::Calibration(msg) => write!(f, "calibration failed: {msg}"),
            CoreError::NonConvergence(msg) => write!(f, "did not converge: {msg}"),
            CoreError::AlreadyStopped => write!(f, "detector has already stopped"),
        }
    }
}

impl core::error::Error for CoreError {}
