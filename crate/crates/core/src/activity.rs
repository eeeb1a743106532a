//! Activity probabilities and normalized entropy of a set of binary sensors.
//!
//! Within a window each sensor's on-time `T(s_i)` becomes the probability
//! `P(s_i) = T(s_i) / sum_j T(s_j)`; the activity level of the whole home is
//! the Shannon entropy of that distribution divided by `log2 R`.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::series::SensorSeries;

/// Activity distribution over sensors for one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ActivityDistribution {
    Probabilities(BTreeMap<String, f64>),
    /// No sensor was on during the window.
    NoActivity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivitySnapshot {
    pub window_start: i64,
    pub window_length_s: f64,
    pub on_times_s: BTreeMap<String, f64>,
    pub distribution: ActivityDistribution,
    /// In `[0, 1]`.
    pub normalized_entropy: f64,
    pub sensor_count: usize,
}

struct SharedGrid {
    t0: i64,
    fs: f64,
    len: usize,
}

fn shared_grid(series_set: &[SensorSeries]) -> Result<SharedGrid> {
    let Some(first) = series_set.first() else {
        return invalid("no sensor series given");
    };
    for s in series_set {
        s.validate()?;
        if s.time_reference_posix_s != first.time_reference_posix_s
            || s.sampling_frequency_hz != first.sampling_frequency_hz
            || s.len() != first.len()
        {
            return invalid(format!(
                "series {} is not on the same grid as {}",
                s.sensor_id, first.sensor_id
            ));
        }
    }
    Ok(SharedGrid {
        t0: first.time_reference_posix_s,
        fs: first.sampling_frequency_hz,
        len: first.len(),
    })
}

fn whole_samples(x: f64, what: &str) -> Result<usize> {
    let r = x.round();
    if (x - r).abs() > 1e-9 * x.abs().max(1.0) || r < 0.0 {
        return invalid(format!("{what} is not aligned to the sampling grid"));
    }
    Ok(r as usize)
}

/// Sample range `[first, first + count)` covered by a window.
fn window_range(grid: &SharedGrid, window_start: i64, window_length_s: f64) -> Result<(usize, usize)> {
    if !(window_length_s > 0.0) {
        return invalid("window length must be positive");
    }
    if window_start < grid.t0 {
        return invalid("window starts before the series");
    }
    let first = whole_samples((window_start - grid.t0) as f64 * grid.fs, "window start")?;
    let count = whole_samples(window_length_s * grid.fs, "window length")?;
    if count == 0 {
        return invalid("window shorter than one sample");
    }
    if first + count > grid.len {
        return invalid("window extends past the end of the series");
    }
    Ok((first, count))
}

/// `T(s_i)`: number of on-samples in the window times the sample period.
pub fn window_on_times(
    series_set: &[SensorSeries],
    window_start: i64,
    window_length_s: f64,
) -> Result<BTreeMap<String, f64>> {
    let grid = shared_grid(series_set)?;
    let (first, count) = window_range(&grid, window_start, window_length_s)?;
    Ok(on_times_in(series_set, first, count, 1.0 / grid.fs))
}

fn on_times_in(series_set: &[SensorSeries], first: usize, count: usize, period: f64) -> BTreeMap<String, f64> {
    series_set
        .iter()
        .map(|s| {
            let on = s.values[first..first + count].iter().filter(|&&v| v == 1).count();
            (s.sensor_id.clone(), on as f64 * period)
        })
        .collect()
}

pub fn activity_probabilities(on_times: &BTreeMap<String, f64>) -> Result<ActivityDistribution> {
    if let Some((id, t)) = on_times.iter().find(|(_, t)| !(**t >= 0.0) || !t.is_finite()) {
        return invalid(format!("sensor {id} has invalid on-time {t}"));
    }
    let total: f64 = on_times.values().sum();
    if total == 0.0 {
        return Ok(ActivityDistribution::NoActivity);
    }
    Ok(ActivityDistribution::Probabilities(
        on_times.iter().map(|(id, t)| (id.clone(), t / total)).collect(),
    ))
}

/// `H / log2 R`, with `0 log 0 = 0`; a window without activity scores 0.
///
/// Probabilities are summed in sorted order, so any permutation of the
/// same probabilities over sensors gives a bit-identical result.
pub fn normalized_entropy(distribution: &ActivityDistribution, sensor_count: usize) -> Result<f64> {
    if sensor_count < 2 {
        return invalid(format!("need at least 2 sensors, got {sensor_count}"));
    }
    let probs = match distribution {
        ActivityDistribution::NoActivity => return Ok(0.0),
        ActivityDistribution::Probabilities(p) => p,
    };
    if probs.len() > sensor_count {
        return invalid("more probabilities than sensors");
    }
    let mut p: Vec<f64> = probs.values().copied().collect();
    if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return invalid("probabilities must lie in [0, 1]");
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return invalid(format!("probabilities sum to {sum}, not 1"));
    }
    p.sort_by(f64::total_cmp);
    let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum();
    Ok((h / (sensor_count as f64).log2()).clamp(0.0, 1.0))
}

/// Snapshot of one window over all series in the set (`R` = set size).
pub fn snapshot(series_set: &[SensorSeries], window_start: i64, window_length_s: f64) -> Result<ActivitySnapshot> {
    let grid = shared_grid(series_set)?;
    let (first, count) = window_range(&grid, window_start, window_length_s)?;
    snapshot_at(series_set, &grid, first, count, window_start, window_length_s)
}

fn snapshot_at(
    series_set: &[SensorSeries],
    grid: &SharedGrid,
    first: usize,
    count: usize,
    window_start: i64,
    window_length_s: f64,
) -> Result<ActivitySnapshot> {
    let on_times_s = on_times_in(series_set, first, count, 1.0 / grid.fs);
    let distribution = activity_probabilities(&on_times_s)?;
    let normalized_entropy = normalized_entropy(&distribution, series_set.len())?;
    Ok(ActivitySnapshot {
        window_start,
        window_length_s,
        on_times_s,
        distribution,
        normalized_entropy,
        sensor_count: series_set.len(),
    })
}

/// One snapshot every `stride_s`, for every window that fits in the series.
pub fn entropy_stream(
    series_set: &[SensorSeries],
    window_length_s: f64,
    stride_s: f64,
) -> Result<Vec<ActivitySnapshot>> {
    let grid = shared_grid(series_set)?;
    if !(stride_s > 0.0) {
        return invalid("stride must be positive");
    }
    let stride = whole_samples(stride_s * grid.fs, "stride")?;
    let count = whole_samples(window_length_s * grid.fs, "window length")?;
    if stride == 0 || count == 0 {
        return invalid("window and stride must span at least one sample");
    }
    if count > grid.len {
        return Ok(Vec::new());
    }
    let starts: Vec<usize> = (0..=grid.len - count).step_by(stride).collect();
    let period = 1.0 / grid.fs;
    starts
        .par_iter()
        .map(|&first| {
            let t = grid.t0 + (first as f64 * period).round() as i64;
            snapshot_at(series_set, &grid, first, count, t, window_length_s)
        })
        .collect()
}

/// One row of an entropy CSV; values in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRow {
    pub timestamp: i64,
    pub entropy_real: f64,
    pub entropy_expected: Option<f64>,
}

/// Pairs real and expected streams by position; both must share timestamps.
pub fn pair_streams(real: &[ActivitySnapshot], expected: Option<&[ActivitySnapshot]>) -> Result<Vec<EntropyRow>> {
    if let Some(e) = expected {
        if e.len() != real.len() {
            return invalid(format!("stream lengths differ: {} vs {}", real.len(), e.len()));
        }
    }
    real.iter()
        .enumerate()
        .map(|(i, r)| {
            let exp = match expected {
                Some(e) if e[i].window_start != r.window_start => {
                    return invalid(format!("streams misaligned at index {i}"));
                }
                Some(e) => Some(e[i].normalized_entropy),
                None => None,
            };
            Ok(EntropyRow {
                timestamp: r.window_start,
                entropy_real: r.normalized_entropy,
                entropy_expected: exp,
            })
        })
        .collect()
}

/// Writes `timestamp,entropy_real,entropy_expected` with entropies as
/// percentages; the expected column is left out when no row has one.
pub fn write_entropy_csv<W: Write>(rows: &[EntropyRow], mut out: W) -> Result<()> {
    let with_expected = rows.iter().any(|r| r.entropy_expected.is_some());
    if with_expected {
        writeln!(out, "timestamp,entropy_real,entropy_expected")?;
    } else {
        writeln!(out, "timestamp,entropy_real")?;
    }
    for r in rows {
        match (with_expected, r.entropy_expected) {
            (true, Some(e)) => writeln!(out, "{},{},{}", r.timestamp, 100.0 * r.entropy_real, 100.0 * e)?,
            (true, None) => writeln!(out, "{},{},", r.timestamp, 100.0 * r.entropy_real)?,
            (false, _) => writeln!(out, "{},{}", r.timestamp, 100.0 * r.entropy_real)?,
        }
    }
    Ok(())
}

pub fn read_entropy_csv<R: BufRead>(input: R) -> Result<Vec<EntropyRow>> {
    let mut rows = Vec::new();
    let mut lines = input.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if !header.starts_with("timestamp,entropy_real") {
        return Err(Error::Data(format!("unexpected entropy CSV header '{header}'")));
    }
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Data(format!("entropy CSV line {}: '{line}'", i + 2));
        let mut fields = line.split(',');
        let timestamp = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
        let real: f64 = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad)?;
        let expected = match fields.next().map(str::trim) {
            None | Some("") => None,
            Some(f) => Some(f.parse::<f64>().map_err(|_| bad())? / 100.0),
        };
        rows.push(EntropyRow {
            timestamp,
            entropy_real: real / 100.0,
            entropy_expected: expected,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn probs(p: &[f64]) -> ActivityDistribution {
        ActivityDistribution::Probabilities(
            p.iter().enumerate().map(|(i, &x)| (format!("s{i}"), x)).collect(),
        )
    }

    fn set(values: &[&[u8]]) -> Vec<SensorSeries> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| SensorSeries::new(format!("s{i}"), v.to_vec(), 1.0 / 30.0, 0, "room").unwrap())
            .collect()
    }

    #[test]
    fn on_time_examples() {
        let s = set(&[&[1, 0, 1, 1], &[0, 0, 0, 0]]);
        let t = window_on_times(&s, 0, 120.0).unwrap();
        assert_eq!(t["s0"], 90.0);
        assert_eq!(t["s1"], 0.0);
        let one = window_on_times(&s, 0, 30.0).unwrap();
        assert_eq!(one["s0"], 30.0);
        assert!(window_on_times(&s, 15, 30.0).is_err());
        assert!(window_on_times(&s, 90, 60.0).is_err());
    }

    #[test]
    fn probability_examples() {
        let t = |v: &[(&str, f64)]| v.iter().map(|(k, x)| (k.to_string(), *x)).collect::<BTreeMap<_, _>>();
        let ActivityDistribution::Probabilities(p) =
            activity_probabilities(&t(&[("a", 20.0), ("b", 10.0), ("c", 10.0), ("d", 0.0)])).unwrap()
        else {
            panic!()
        };
        assert_eq!((p["a"], p["b"], p["c"], p["d"]), (0.5, 0.25, 0.25, 0.0));
        let ActivityDistribution::Probabilities(p) =
            activity_probabilities(&t(&[("a", 10.0), ("b", 10.0), ("c", 10.0)])).unwrap()
        else {
            panic!()
        };
        assert!(p.values().all(|&x| (x - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(
            activity_probabilities(&t(&[("a", 0.0), ("b", 0.0)])).unwrap(),
            ActivityDistribution::NoActivity
        );
        assert!(activity_probabilities(&t(&[("a", -1.0)])).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert!((normalized_entropy(&probs(&[0.2; 5]), 5).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(normalized_entropy(&probs(&[1.0, 0.0, 0.0, 0.0, 0.0]), 5).unwrap(), 0.0);
        // H = 1.5 bits; 1.5 / log2(3) = 0.946394630357186...
        let h = normalized_entropy(&probs(&[0.5, 0.25, 0.25]), 3).unwrap();
        assert!((h - 0.946_394_630_357_186).abs() < 1e-12);
        assert_eq!(normalized_entropy(&ActivityDistribution::NoActivity, 4).unwrap(), 0.0);
        assert!(normalized_entropy(&probs(&[1.0]), 1).is_err());
        assert!(normalized_entropy(&probs(&[0.5, 0.2]), 2).is_err());
    }

    #[test]
    fn stream_matches_one_shot_snapshots() {
        let s = set(&[&[1, 0, 1, 1, 0, 0, 1, 0], &[0, 1, 1, 0, 0, 1, 1, 0], &[0, 0, 1, 0, 1, 0, 1, 1]]);
        let stream = entropy_stream(&s, 60.0, 30.0).unwrap();
        assert_eq!(stream.len(), 7);
        for snap in &stream {
            assert_eq!(*snap, snapshot(&s, snap.window_start, 60.0).unwrap());
        }
        let single = entropy_stream(&s, 240.0, 240.0).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0], snapshot(&s, 0, 240.0).unwrap());
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            EntropyRow { timestamp: 0, entropy_real: 0.25, entropy_expected: Some(0.5) },
            EntropyRow { timestamp: 30, entropy_real: 1.0, entropy_expected: Some(0.0) },
        ];
        let mut buf = Vec::new();
        write_entropy_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "timestamp,entropy_real,entropy_expected\n0,25,50\n30,100,0\n");
        assert_eq!(read_entropy_csv(buf.as_slice()).unwrap(), rows);
    }

    proptest! {
        #[test]
        fn permutation_invariance(raw in proptest::collection::vec(0.0f64..1.0, 2..12), seed in any::<u64>()) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 0.0);
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let mut shuffled = p.clone();
            let mut state = seed;
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (state >> 33) as usize % (i + 1));
            }
            let r = p.len();
            prop_assert_eq!(
                normalized_entropy(&probs(&p), r).unwrap().to_bits(),
                normalized_entropy(&probs(&shuffled), r).unwrap().to_bits()
            );
        }

        #[test]
        fn bounds_and_uniform_maximum(raw in proptest::collection::vec(0.0f64..1.0, 2..12)) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 0.0);
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let h = normalized_entropy(&probs(&p), p.len()).unwrap();
            prop_assert!((0.0..=1.0).contains(&h));
            let uniform = p.iter().all(|&x| (x - 1.0 / p.len() as f64).abs() < 1e-12);
            if !uniform {
                prop_assert!(h < 1.0 - 1e-12 || p.iter().all(|&x| (x - 1.0 / p.len() as f64).abs() < 1e-6));
            }
        }

        #[test]
        fn adding_idle_sensor_lowers_entropy(raw in proptest::collection::vec(0.01f64..1.0, 2..10)) {
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let r = p.len();
            let h = normalized_entropy(&probs(&p), r).unwrap();
            let mut q = p.clone();
            q.push(0.0);
            let h2 = normalized_entropy(&probs(&q), r + 1).unwrap();
            prop_assert!(h2 < h);
        }
    }
}
