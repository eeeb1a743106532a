//! Dataset ingestion: JSON-lines sensor exports, grid resampling, corpus
//! directories and a labelled synthetic corpus generator.

mod corpus;
mod resample;
mod synthetic;

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use corpus::{
    split_folds, AnomalyKind, AnomalyLabel, Corpus, FoldPreset, Grid, SensorInfo, DEFAULT_SAMPLING_PERIOD_S,
};
pub use resample::{resample_binary, series_to_records};
pub use synthetic::{
    generate_synthetic, AnomalySpec, DailyInterval, Spike, SyntheticSensor, SyntheticSpec,
};

/// Fraction of malformed lines above which a load is aborted.
pub const MAX_MALFORMED_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadingType {
    Motion,
    Contact,
    Humidity,
    Temperature,
    Light,
    Energy,
}

impl ReadingType {
    /// Motion and contact sensors both count as binary activity sensors.
    pub fn is_binary(self) -> bool {
        matches!(self, ReadingType::Motion | ReadingType::Contact)
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "motion" | "presence" | "pir" => ReadingType::Motion,
            "contact" | "door" | "opening" => ReadingType::Contact,
            "humidity" => ReadingType::Humidity,
            "temperature" => ReadingType::Temperature,
            "light" | "luminance" => ReadingType::Light,
            "energy" | "power" => ReadingType::Energy,
            _ => return None,
        })
    }
}

impl fmt::Display for ReadingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReadingType::Motion => "motion",
            ReadingType::Contact => "contact",
            ReadingType::Humidity => "humidity",
            ReadingType::Temperature => "temperature",
            ReadingType::Light => "light",
            ReadingType::Energy => "energy",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReadingValue {
    Bool(bool),
    Number(f64),
}

impl ReadingValue {
    pub fn is_on(self) -> bool {
        match self {
            ReadingValue::Bool(b) => b,
            ReadingValue::Number(x) => x != 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorRecord {
    /// POSIX seconds.
    pub timestamp: f64,
    pub sensor_id: String,
    pub location: String,
    pub reading_type: ReadingType,
    pub value: ReadingValue,
    /// Explicit activation length, when the export carries one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
}

/// Field names of one dataset's JSON documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FieldMapping {
    pub timestamp: String,
    pub sensor: String,
    pub location: String,
    pub reading_type: String,
    pub value: String,
    pub duration: Option<String>,
    /// Multiplier turning the raw timestamp into seconds (0.001 for millis).
    pub timestamp_scale: f64,
    /// Extra raw type names mapped onto the canonical vocabulary.
    pub type_aliases: BTreeMap<String, ReadingType>,
}

impl Default for FieldMapping {
    fn default() -> Self {
        Self {
            timestamp: "ts".into(),
            sensor: "sensor".into(),
            location: "location".into(),
            reading_type: "type".into(),
            value: "value".into(),
            duration: None,
            timestamp_scale: 1.0,
            type_aliases: BTreeMap::new(),
        }
    }
}

impl FieldMapping {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedLine {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub total_lines: usize,
    pub parsed: usize,
    pub skipped: Vec<SkippedLine>,
}

impl LoadReport {
    pub fn skipped_lines(&self) -> Vec<usize> {
        self.skipped.iter().map(|s| s.line).collect()
    }
}

/// Loads a JSON-lines export. Malformed lines are skipped and reported;
/// more than 10% malformed lines is fatal.
pub fn load_jsonl(path: &Path, mapping: &FieldMapping) -> Result<(Vec<SensorRecord>, LoadReport)> {
    let file = File::open(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_jsonl(BufReader::new(file), mapping)
}

pub fn parse_jsonl<R: BufRead>(reader: R, mapping: &FieldMapping) -> Result<(Vec<SensorRecord>, LoadReport)> {
    let mut records = Vec::new();
    let mut report = LoadReport::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        report.total_lines += 1;
        match parse_line(&line, mapping) {
            Ok(r) => records.push(r),
            Err(reason) => report.skipped.push(SkippedLine { line: i + 1, reason }),
        }
    }
    report.parsed = records.len();
    if report.total_lines > 0
        && report.skipped.len() as f64 > MAX_MALFORMED_FRACTION * report.total_lines as f64
    {
        return Err(Error::Data(format!(
            "{} of {} lines malformed (lines {:?})",
            report.skipped.len(),
            report.total_lines,
            report.skipped_lines()
        )));
    }
    Ok((records, report))
}

fn parse_line(line: &str, m: &FieldMapping) -> std::result::Result<SensorRecord, String> {
    let doc: Value = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let field = |name: &str| doc.get(name).ok_or_else(|| format!("missing field '{name}'"));
    let timestamp = parse_timestamp(field(&m.timestamp)?)
        .map(|t| t * m.timestamp_scale)
        .filter(|t| t.is_finite())
        .ok_or("bad timestamp")?;
    let sensor_id = as_text(field(&m.sensor)?).ok_or("bad sensor id")?;
    let location = doc.get(&m.location).and_then(as_text).unwrap_or_default();
    let raw_type = as_text(field(&m.reading_type)?).ok_or("bad reading type")?;
    let reading_type = m
        .type_aliases
        .get(&raw_type)
        .copied()
        .or_else(|| ReadingType::parse(&raw_type))
        .ok_or_else(|| format!("unknown reading type '{raw_type}'"))?;
    let value = parse_value(field(&m.value)?).ok_or("bad value")?;
    let duration_s = match &m.duration {
        Some(name) => doc.get(name).and_then(Value::as_f64).filter(|d| *d >= 0.0),
        None => None,
    };
    Ok(SensorRecord {
        timestamp,
        sensor_id,
        location,
        reading_type,
        value,
        duration_s,
    })
}

fn as_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.is_empty() => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

// Plain numbers, numeric strings, or a MongoDB extended-JSON {"$date": millis}.
fn parse_timestamp(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.trim().parse().ok(),
        Value::Object(o) => {
            let date = o.get("$date")?;
            let millis = match date {
                Value::Object(inner) => inner.get("$numberLong").and_then(|x| match x {
                    Value::String(s) => s.parse::<f64>().ok(),
                    other => other.as_f64(),
                }),
                other => other.as_f64(),
            }?;
            Some(millis / 1000.0)
        }
        _ => None,
    }
}

fn parse_value(v: &Value) -> Option<ReadingValue> {
    match v {
        Value::Bool(b) => Some(ReadingValue::Bool(*b)),
        Value::Number(n) => n.as_f64().filter(|x| x.is_finite()).map(ReadingValue::Number),
        Value::String(s) => match s.to_ascii_lowercase().as_str() {
            "on" | "open" | "true" | "active" => Some(ReadingValue::Bool(true)),
            "off" | "closed" | "false" | "inactive" => Some(ReadingValue::Bool(false)),
            other => other.parse::<f64>().ok().map(ReadingValue::Number),
        },
        _ => None,
    }
}

/// Writes `bytes` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
