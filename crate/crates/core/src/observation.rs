//! Validated p-dimensional observations.

use alloc::vec::Vec;

use crate::error::CoreError;

/// One time step's p-dimensional reading.
///
/// Entries are guaranteed finite and the length fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationVector {
    values: Vec<f64>,
}

impl ObservationVector {
    pub fn new(values: Vec<f64>) -> Result<Self, CoreError> {
        if values.is_empty() {
            return Err(CoreError::InvalidConfig(
                "observation dimension must be at least 1".into(),
            ));
        }
        validate_entries(&values)?;
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for ObservationVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Rejects NaN and infinite entries, reporting the first offending position.
pub(crate) fn validate_entries(values: &[f64]) -> Result<(), CoreError> {
    for (index, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(CoreError::NonFinite { index });
        }
    }
    Ok(())
}
