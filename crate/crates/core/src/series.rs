use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A uniformly sampled binary sensor signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorSeries {
    pub sensor_id: String,
    pub values: Vec<u8>,
    pub sampling_frequency_hz: f64,
    /// POSIX time of sample 0, in seconds.
    pub time_reference_posix_s: i64,
    pub location: String,
}

impl SensorSeries {
    pub fn new(
        sensor_id: impl Into<String>,
        values: Vec<u8>,
        sampling_frequency_hz: f64,
        time_reference_posix_s: i64,
        location: impl Into<String>,
    ) -> Result<Self> {
        let series = Self {
            sensor_id: sensor_id.into(),
            values,
            sampling_frequency_hz,
            time_reference_posix_s,
            location: location.into(),
        };
        series.validate()?;
        Ok(series)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sampling_frequency_hz.is_finite() && self.sampling_frequency_hz > 0.0) {
            return invalid(format!(
                "sensor {}: sampling frequency must be positive, got {}",
                self.sensor_id, self.sampling_frequency_hz
            ));
        }
        if let Some(pos) = self.values.iter().position(|&v| v > 1) {
            return invalid(format!(
                "sensor {}: non-binary value {} at sample {}",
                self.sensor_id, self.values[pos], pos
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sample_period_s(&self) -> f64 {
        1.0 / self.sampling_frequency_hz
    }

    /// Timestamp of sample `n`, rounded to whole seconds.
    pub fn timestamp_of(&self, n: usize) -> i64 {
        self.time_reference_posix_s + (n as f64 * self.sample_period_s()).round() as i64
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| f64::from(v)).collect()
    }

    /// Returns the sub-series `[start, start + len)` with a shifted time reference.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.values.len() {
            return invalid(format!(
                "sensor {}: slice {}..{} exceeds length {}",
                self.sensor_id,
                start,
                start + len,
                self.values.len()
            ));
        }
        Ok(Self {
            sensor_id: self.sensor_id.clone(),
            values: self.values[start..start + len].to_vec(),
            sampling_frequency_hz: self.sampling_frequency_hz,
            time_reference_posix_s: self.timestamp_of(start),
            location: self.location.clone(),
        })
    }
}
