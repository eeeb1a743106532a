use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rules::RuleConfig;
use crate::error::{invalid, Error, Result};
use crate::series::SensorSeries;

/// Sensor evidence for the window starting at `timestamp`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvidenceFrame {
    pub timestamp: i64,
    /// Length of the open run that reaches the window's last sample, in seconds.
    pub door_open_s: BTreeMap<String, f64>,
    /// Whether the sensor fired anywhere in the window.
    pub motion_active: BTreeMap<String, bool>,
}

fn window(series: &SensorSeries, start: i64, length_s: f64) -> Result<(usize, usize)> {
    let fs = series.sampling_frequency_hz;
    let first = (start - series.time_reference_posix_s) as f64 * fs;
    let count = length_s * fs;
    if first < 0.0 || (first - first.round()).abs() > 1e-9 || (count - count.round()).abs() > 1e-9 {
        return invalid(format!("window at {start} is not on the grid of '{}'", series.sensor_id));
    }
    let (first, count) = (first.round() as usize, count.round() as usize);
    if count == 0 || first + count > series.len() {
        return invalid(format!("window at {start} falls outside '{}'", series.sensor_id));
    }
    Ok((first, count))
}

/// Door and motion evidence for each window `[t, t + window_length_s)`.
pub fn evidence_stream(
    series_set: &[SensorSeries],
    rules: &RuleConfig,
    timestamps: &[i64],
    window_length_s: f64,
) -> Result<Vec<EvidenceFrame>> {
    let find = |id: &str| {
        series_set
            .iter()
            .find(|s| s.sensor_id == id)
            .ok_or_else(|| Error::Config(format!("rule sensor '{id}' has no series")))
    };
    let doors: Vec<&SensorSeries> = rules.door_sensors.iter().map(|id| find(id)).collect::<Result<_>>()?;
    let motions: Vec<&SensorSeries> = rules.motion_sensors.iter().map(|id| find(id)).collect::<Result<_>>()?;
    timestamps
        .iter()
        .map(|&t| {
            let mut frame = EvidenceFrame {
                timestamp: t,
                ..EvidenceFrame::default()
            };
            for s in &doors {
                let (first, count) = window(s, t, window_length_s)?;
                let run = s.values[..first + count].iter().rev().take_while(|&&v| v == 1).count();
                frame.door_open_s.insert(s.sensor_id.clone(), run as f64 * s.sample_period_s());
            }
            for s in &motions {
                let (first, count) = window(s, t, window_length_s)?;
                frame
                    .motion_active
                    .insert(s.sensor_id.clone(), s.values[first..first + count].contains(&1));
            }
            Ok(frame)
        })
        .collect()
}
