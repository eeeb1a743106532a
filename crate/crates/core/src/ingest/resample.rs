use super::{Grid, ReadingType, ReadingValue, SensorRecord};
use crate::error::{invalid, Result};
use crate::series::SensorSeries;

/// OR-aggregates one binary sensor's records onto `grid`.
///
/// An ON record opens an activation that lasts until the next OFF record
/// (repeated ONs extend it). ONs never closed by an OFF count as point
/// events, as does a record with an explicit zero duration. A cell is 1 when
/// any activation overlaps it; intervals are half-open, so an activation
/// ending exactly on a cell boundary does not reach the next cell.
pub fn resample_binary(records: &[SensorRecord], grid: &Grid) -> Result<SensorSeries> {
    let Some(first) = records.first() else {
        return invalid("no records to resample");
    };
    for r in records {
        if !r.reading_type.is_binary() {
            return invalid(format!(
                "sensor {} has non-binary reading type {}",
                r.sensor_id, r.reading_type
            ));
        }
        if r.sensor_id != first.sensor_id {
            return invalid(format!(
                "records from several sensors ({} and {})",
                first.sensor_id, r.sensor_id
            ));
        }
    }
    grid.validate()?;
    let mut sorted: Vec<&SensorRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));

    let mut values = vec![0u8; grid.length];
    let mut open_since: Option<f64> = None;
    let mut pending_points = Vec::new();
    for r in sorted {
        if let Some(d) = r.duration_s {
            if r.value.is_on() {
                mark(&mut values, grid, r.timestamp, r.timestamp + d);
            }
            continue;
        }
        if r.value.is_on() {
            pending_points.push(r.timestamp);
            open_since.get_or_insert(r.timestamp);
        } else if let Some(start) = open_since.take() {
            mark(&mut values, grid, start, r.timestamp);
            pending_points.clear();
        }
    }
    for t in pending_points {
        mark(&mut values, grid, t, t);
    }
    SensorSeries::new(
        first.sensor_id.clone(),
        values,
        1.0 / grid.period_s,
        grid.start_posix_s,
        first.location.clone(),
    )
}

fn mark(values: &mut [u8], grid: &Grid, start: f64, end: f64) {
    let rel_start = (start - grid.start_posix_s as f64) / grid.period_s;
    let first = rel_start.floor();
    let last = if end > start {
        // Half-open [start, end): the last touched cell contains end - epsilon.
        ((end - grid.start_posix_s as f64) / grid.period_s).ceil() - 1.0
    } else {
        first
    };
    let lo = first.max(0.0);
    let hi = last.min(values.len() as f64 - 1.0);
    if lo > hi {
        return;
    }
    for v in &mut values[lo as usize..=hi as usize] {
        *v = 1;
    }
}

/// Turns a grid-aligned series back into ON/OFF records, one pair per run
/// of ones.
pub fn series_to_records(series: &SensorSeries, reading_type: ReadingType) -> Vec<SensorRecord> {
    let period = series.sample_period_s();
    let t0 = series.time_reference_posix_s as f64;
    let record = |n: usize, on: bool| SensorRecord {
        timestamp: t0 + n as f64 * period,
        sensor_id: series.sensor_id.clone(),
        location: series.location.clone(),
        reading_type,
        value: ReadingValue::Bool(on),
        duration_s: None,
    };
    let mut out = Vec::new();
    let mut prev = 0u8;
    for (n, &v) in series.values.iter().enumerate() {
        if v != prev {
            out.push(record(n, v == 1));
            prev = v;
        }
    }
    if prev == 1 {
        out.push(record(series.len(), false));
    }
    out
}
