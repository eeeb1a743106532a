//! Fourier baseline (FreMEn-style frequency map).
//!
//! The state probability of a binary sensor is modelled as its mean
//! activation plus the `K` strongest harmonics of the training spectrum.

use std::path::Path;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::series::SensorSeries;

pub const FREMEN_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_COMPONENTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub frequency_hz: f64,
    pub amplitude: f64,
    /// Radians.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FremenModel {
    pub format_version: u32,
    pub sensor_id: String,
    pub location: String,
    pub mean_activation: f64,
    /// Sorted by descending amplitude.
    pub components: Vec<Harmonic>,
    pub component_count: usize,
    pub time_reference_posix_s: i64,
    pub sampling_frequency_hz: f64,
    pub binarize_cutoff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FremenPrediction {
    pub probability: f64,
    pub value: u8,
}

/// Fits the mean plus the `k` strongest non-DC harmonics of `series`.
pub fn fit_fremen(series: &SensorSeries, k: usize) -> Result<FremenModel> {
    fit_fremen_with_cutoff(series, k, 0.5)
}

pub fn fit_fremen_with_cutoff(series: &SensorSeries, k: usize, cutoff: f64) -> Result<FremenModel> {
    series.validate()?;
    if k == 0 {
        return invalid("component count must be positive");
    }
    let n = series.len();
    if n < 2 * k + 1 {
        return invalid(format!("series of {n} samples is too short for {k} components"));
    }
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return invalid(format!("binarization cutoff must lie in (0, 1), got {cutoff}"));
    }
    let mut buf: Vec<Complex<f64>> = series.values.iter().map(|&v| Complex::new(f64::from(v), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let nf = n as f64;
    let mut harmonics: Vec<(usize, Harmonic)> = (1..=n / 2)
        .map(|bin| {
            let c = buf[bin];
            // Bins other than Nyquist stand for a conjugate pair.
            let scale = if 2 * bin == n { 1.0 } else { 2.0 };
            (
                bin,
                Harmonic {
                    frequency_hz: bin as f64 * series.sampling_frequency_hz / nf,
                    amplitude: scale * c.norm() / nf,
                    phase: c.arg(),
                },
            )
        })
        .collect();
    // Stable: equal amplitudes keep the lower frequency first.
    harmonics.sort_by(|a, b| b.1.amplitude.total_cmp(&a.1.amplitude).then(a.0.cmp(&b.0)));
    harmonics.truncate(k);
    Ok(FremenModel {
        format_version: FREMEN_FORMAT_VERSION,
        sensor_id: series.sensor_id.clone(),
        location: series.location.clone(),
        mean_activation: buf[0].re / nf,
        components: harmonics.into_iter().map(|(_, h)| h).collect(),
        component_count: k,
        time_reference_posix_s: series.time_reference_posix_s,
        sampling_frequency_hz: series.sampling_frequency_hz,
        binarize_cutoff: cutoff,
    })
}

impl FremenModel {
    /// `p(t) = clamp(mean + sum A cos(2 pi f (t - t0) + phase))`.
    pub fn predict(&self, t_posix_s: i64) -> FremenPrediction {
        let dt = (t_posix_s - self.time_reference_posix_s) as f64;
        let raw = self.components.iter().fold(self.mean_activation, |acc, h| {
            acc + h.amplitude * (std::f64::consts::TAU * h.frequency_hz * dt + h.phase).cos()
        });
        let probability = raw.clamp(0.0, 1.0);
        FremenPrediction {
            probability,
            value: u8::from(probability >= self.binarize_cutoff),
        }
    }

    /// Binary forecast on the sampling grid over `[t_start, t_end)`; an empty
    /// window yields one sample.
    pub fn forecast_window(&self, t_start: i64, t_end: i64) -> Result<SensorSeries> {
        if t_end < t_start {
            return invalid(format!("window end {t_end} precedes start {t_start}"));
        }
        let period = 1.0 / self.sampling_frequency_hz;
        let count = (crate::model::ceil_tolerant((t_end - t_start) as f64 * self.sampling_frequency_hz) as usize).max(1);
        let values = (0..count)
            .map(|m| self.predict(t_start + (m as f64 * period).round() as i64).value)
            .collect();
        SensorSeries::new(
            self.sensor_id.clone(),
            values,
            self.sampling_frequency_hz,
            t_start,
            self.location.clone(),
        )
    }

    pub fn file_name(sensor_id: &str) -> String {
        format!("{sensor_id}.fremen.json")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        if model.format_version != FREMEN_FORMAT_VERSION {
            return Err(Error::Data(format!(
                "unsupported FreMEn model format version {}",
                model.format_version
            )));
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::ingest::write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
