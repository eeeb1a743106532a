use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{resample_binary, write_atomic, ReadingType, SensorRecord};
use crate::error::{invalid, Error, Result};
use crate::series::SensorSeries;

pub const DEFAULT_SAMPLING_PERIOD_S: f64 = 30.0;
const MANIFEST: &str = "manifest.json";
const CORPUS_FORMAT_VERSION: u32 = 1;

/// A uniform sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start_posix_s: i64,
    pub period_s: f64,
    pub length: usize,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if !(self.period_s.is_finite() && self.period_s > 0.0) {
            return invalid(format!("grid period must be positive, got {}", self.period_s));
        }
        if self.length == 0 {
            return invalid("grid length must be positive");
        }
        Ok(())
    }

    /// Grid covering `[start, end)` of the records, aligned to whole periods
    /// from the first record's cell.
    pub fn covering(records: &[SensorRecord], period_s: f64) -> Result<Self> {
        let (lo, hi) = records.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.timestamp), hi.max(r.timestamp + r.duration_s.unwrap_or(0.0)))
        });
        if !lo.is_finite() {
            return invalid("no records to build a grid from");
        }
        let start = (lo / period_s).floor() * period_s;
        let length = (((hi - start) / period_s).floor() as usize) + 1;
        Ok(Self {
            start_posix_s: start as i64,
            period_s,
            length,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensorInfo {
    pub sensor_id: String,
    pub location: String,
    pub reading_type: ReadingType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyKind {
    OffSchedule,
    DoorLeftOpen,
    NighttimeMotion,
}

/// A labelled anomaly interval `[start, end)` (synthetic corpora only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnomalyLabel {
    pub kind: AnomalyKind,
    pub start_posix_s: i64,
    pub end_posix_s: i64,
    pub sensor_ids: Vec<String>,
}

/// Named fold lengths used by the reference deployments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldPreset {
    /// Office deployment: about three months of training, one week of testing.
    Office,
    /// Apartment deployment: three weeks of training, one week of testing.
    Apartment,
}

impl FoldPreset {
    /// `(training, testing)` lengths in days.
    pub fn days(self) -> (u32, u32) {
        match self {
            FoldPreset::Office => (91, 7),
            FoldPreset::Apartment => (21, 7),
        }
    }

    /// `(training, testing)` lengths in samples for a given period.
    pub fn samples(self, period_s: f64) -> (usize, usize) {
        let (train, test) = self.days();
        let per_day = (86_400.0 / period_s).round() as usize;
        (train as usize * per_day, test as usize * per_day)
    }
}

/// Aligned binary series of one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub grid: Grid,
    pub sensors: Vec<SensorInfo>,
    /// One series per entry of `sensors`, all on `grid`.
    #[serde(skip)]
    pub series: Vec<SensorSeries>,
    #[serde(default)]
    pub labels: Vec<AnomalyLabel>,
    /// Sensors seen in the records but left out of modelling (non-binary).
    #[serde(default)]
    pub excluded_sensors: Vec<SensorInfo>,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    #[serde(flatten)]
    corpus: Corpus,
}

impl Corpus {
    /// Groups records by sensor and resamples the binary ones onto `grid`.
    pub fn from_records(name: impl Into<String>, records: &[SensorRecord], grid: Grid) -> Result<Self> {
        grid.validate()?;
        let mut by_sensor: BTreeMap<&str, Vec<SensorRecord>> = BTreeMap::new();
        for r in records {
            by_sensor.entry(&r.sensor_id).or_default().push(r.clone());
        }
        let mut sensors = Vec::new();
        let mut series = Vec::new();
        let mut excluded_sensors = Vec::new();
        for (id, recs) in by_sensor {
            let info = SensorInfo {
                sensor_id: id.to_string(),
                location: recs[0].location.clone(),
                reading_type: recs[0].reading_type,
            };
            if recs.iter().any(|r| r.reading_type != info.reading_type) {
                return Err(Error::Data(format!("sensor {id} reports several reading types")));
            }
            if info.reading_type.is_binary() {
                series.push(resample_binary(&recs, &grid)?);
                sensors.push(info);
            } else {
                excluded_sensors.push(info);
            }
        }
        Ok(Self {
            name: name.into(),
            grid,
            sensors,
            series,
            labels: Vec::new(),
            excluded_sensors,
        })
    }

    pub fn series_for(&self, sensor_id: &str) -> Option<&SensorSeries> {
        self.series.iter().find(|s| s.sensor_id == sensor_id)
    }

    pub fn sensor_ids_of(&self, kind: ReadingType) -> Vec<String> {
        self.sensors
            .iter()
            .filter(|s| s.reading_type == kind)
            .map(|s| s.sensor_id.clone())
            .collect()
    }

    /// Sub-corpus of samples `[start, start + len)`; labels are kept when
    /// they overlap the range.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.grid.length {
            return invalid(format!(
                "range {start}..{} outside corpus of {} samples",
                start + len,
                self.grid.length
            ));
        }
        let series = self
            .series
            .iter()
            .map(|s| s.slice(start, len))
            .collect::<Result<Vec<_>>>()?;
        let grid = Grid {
            start_posix_s: self.grid.start_posix_s + (start as f64 * self.grid.period_s).round() as i64,
            period_s: self.grid.period_s,
            length: len,
        };
        let end = grid.start_posix_s + (len as f64 * grid.period_s).round() as i64;
        let labels = self
            .labels
            .iter()
            .filter(|l| l.start_posix_s < end && l.end_posix_s > grid.start_posix_s)
            .cloned()
            .collect();
        Ok(Self {
            name: self.name.clone(),
            grid,
            sensors: self.sensors.clone(),
            series,
            labels,
            excluded_sensors: self.excluded_sensors.clone(),
        })
    }

    /// Writes `manifest.json` plus one `series/<sensor_id>.csv` per sensor.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir.join("series"))?;
        for s in &self.series {
            let mut csv = String::with_capacity(s.len() * 14 + 16);
            csv.push_str("timestamp,value\n");
            for (n, v) in s.values.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", s.timestamp_of(n), v));
            }
            write_atomic(&dir.join("series").join(format!("{}.csv", s.sensor_id)), csv.as_bytes())?;
        }
        let manifest = Manifest {
            format_version: CORPUS_FORMAT_VERSION,
            corpus: self.clone(),
        };
        write_atomic(&dir.join(MANIFEST), serde_json::to_string_pretty(&manifest)?.as_bytes())
    }

    pub fn read_dir(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join(MANIFEST))
            .map_err(|e| Error::Data(format!("cannot read corpus manifest in {}: {e}", dir.display())))?;
        let manifest: Manifest = serde_json::from_str(&text)?;
        if manifest.format_version != CORPUS_FORMAT_VERSION {
            return Err(Error::Data(format!(
                "unsupported corpus format version {}",
                manifest.format_version
            )));
        }
        let mut corpus = manifest.corpus;
        corpus.grid.validate()?;
        let mut series = Vec::with_capacity(corpus.sensors.len());
        for info in &corpus.sensors {
            let path = dir.join("series").join(format!("{}.csv", info.sensor_id));
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
            let mut values = Vec::with_capacity(corpus.grid.length);
            for (i, line) in text.lines().enumerate().skip(1) {
                let v = line
                    .rsplit(',')
                    .next()
                    .and_then(|v| v.trim().parse::<u8>().ok())
                    .filter(|v| *v <= 1)
                    .ok_or_else(|| Error::Data(format!("{}:{}: bad value", path.display(), i + 1)))?;
                values.push(v);
            }
            if values.len() != corpus.grid.length {
                return Err(Error::Data(format!(
                    "{} has {} samples, manifest says {}",
                    path.display(),
                    values.len(),
                    corpus.grid.length
                )));
            }
            series.push(SensorSeries::new(
                info.sensor_id.clone(),
                values,
                1.0 / corpus.grid.period_s,
                corpus.grid.start_posix_s,
                info.location.clone(),
            )?);
        }
        corpus.series = series;
        Ok(corpus)
    }
}

/// Splits off a training fold starting at the corpus start and the testing
/// fold that immediately follows it. Lengths are in samples.
pub fn split_folds(corpus: &Corpus, training_len: usize, testing_len: usize) -> Result<(Corpus, Corpus)> {
    if training_len == 0 || testing_len == 0 {
        return invalid("fold lengths must be positive");
    }
    if training_len + testing_len > corpus.grid.length {
        return invalid(format!(
            "corpus has {} samples, folds need {}",
            corpus.grid.length,
            training_len + testing_len
        ));
    }
    Ok((corpus.slice(0, training_len)?, corpus.slice(training_len, testing_len)?))
}
