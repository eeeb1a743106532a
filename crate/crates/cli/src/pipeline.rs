use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::Path;

use anyhow::{bail, Context};
use sensorwave::activity::{entropy_stream, pair_streams, read_entropy_csv, write_entropy_csv, EntropyRow};
use sensorwave::fremen::{fit_fremen, FremenModel};
use sensorwave::inference::{
    detect_gaussian1d, detect_hmln, detect_lof, evidence_stream, read_detection_csv, DetectionRun,
};
use sensorwave::ingest::{
    generate_synthetic, load_jsonl, split_folds, AnomalyLabel, Corpus, FieldMapping, Grid, ReadingType, SyntheticSpec,
};
use sensorwave::metrics::{average_reports, binary_classification_metrics, similarity_metrics, MetricsReport};
use sensorwave::model::{build_model, ModelParams, WaveletModel};
use serde::Serialize;

use crate::settings::{DetectorKind, Fold, Settings};
use crate::UsageError;

/// `synthetic`, a `.jsonl` export, a corpus directory, or an output
/// directory holding `corpus/`.
pub fn load_corpus(s: &Settings) -> anyhow::Result<Corpus> {
    let r = s.resolved();
    let source = r.corpus.as_deref().unwrap();
    let period = s.seconds(&r.period, "period")?;
    if source == "synthetic" {
        let mut spec = SyntheticSpec::default_home(r.seed.unwrap());
        if period.fract() != 0.0 || 86_400.0 % period != 0.0 {
            bail!(UsageError(format!("synthetic corpora need a period dividing one day, got {period} s")));
        }
        spec.sampling_period_s = period as u32;
        return Ok(generate_synthetic(&spec)?);
    }
    let path = Path::new(source);
    if !path.exists() {
        bail!(UsageError(format!("corpus {} does not exist", path.display())));
    }
    if path.is_dir() {
        let nested = path.join("corpus");
        let dir = if nested.join("manifest.json").is_file() { nested } else { path.to_path_buf() };
        return Ok(Corpus::read_dir(&dir)?);
    }
    let mapping = match &r.mapping {
        Some(m) => FieldMapping::load(m)?,
        None => FieldMapping::default(),
    };
    let (records, report) = load_jsonl(path, &mapping)?;
    for skipped in &report.skipped {
        eprintln!("{}:{}: skipped: {}", path.display(), skipped.line, skipped.reason);
    }
    let name = path.file_stem().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Corpus::from_records(name, &records, Grid::covering(&records, period)?)?)
}

fn samples(s: &Settings, corpus: &Corpus, field: &Option<String>, flag: &str) -> anyhow::Result<usize> {
    let secs = s.seconds(field, flag)?;
    let n = secs / corpus.grid.period_s;
    if (n - n.round()).abs() > 1e-9 {
        bail!(UsageError(format!("--{flag} is not a whole number of {} s samples", corpus.grid.period_s)));
    }
    Ok(n.round() as usize)
}

pub fn folds(s: &Settings, corpus: &Corpus) -> anyhow::Result<(Corpus, Corpus)> {
    let r = s.resolved();
    let train = samples(s, corpus, &r.train_window, "train-window")?;
    let test = samples(s, corpus, &r.test_window, "test-window")?;
    Ok(split_folds(corpus, train, test)?)
}

pub fn fold(s: &Settings, corpus: &Corpus, which: Fold) -> anyhow::Result<Corpus> {
    Ok(match which {
        Fold::All => corpus.clone(),
        Fold::Train => folds(s, corpus)?.0,
        Fold::Test => folds(s, corpus)?.1,
    })
}

pub enum Models {
    Wavelet(Vec<WaveletModel>),
    Fremen(Vec<FremenModel>),
}

impl Models {
    pub fn train_wavelet(train: &Corpus, params: &ModelParams) -> anyhow::Result<Self> {
        let models = train
            .series
            .iter()
            .map(|s| build_model(s, params).with_context(|| format!("training {}", s.sensor_id)))
            .collect::<anyhow::Result<_>>()?;
        Ok(Models::Wavelet(models))
    }

    pub fn train_fremen(train: &Corpus, components: usize) -> anyhow::Result<Self> {
        let models = train
            .series
            .iter()
            .map(|s| fit_fremen(s, components).with_context(|| format!("training {}", s.sensor_id)))
            .collect::<anyhow::Result<_>>()?;
        Ok(Models::Fremen(models))
    }

    pub fn save(&self, dir: &Path) -> anyhow::Result<()> {
        fs::create_dir_all(dir)?;
        match self {
            Models::Wavelet(ms) => ms.iter().try_for_each(|m| m.save(&dir.join(WaveletModel::file_name(&m.sensor_id)))),
            Models::Fremen(ms) => ms.iter().try_for_each(|m| m.save(&dir.join(FremenModel::file_name(&m.sensor_id)))),
        }?;
        Ok(())
    }

    /// Every `*.wmodel.json` or every `*.fremen.json` in `dir`.
    pub fn load(dir: &Path) -> anyhow::Result<Self> {
        let dir = if dir.join("models").is_dir() { dir.join("models") } else { dir.to_path_buf() };
        let mut files: Vec<_> = fs::read_dir(&dir)
            .map_err(|e| UsageError(format!("models {}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .collect();
        files.sort();
        let named = |suffix: &str| -> Vec<&Path> {
            files
                .iter()
                .filter(|p| p.to_string_lossy().ends_with(suffix))
                .map(|p| p.as_path())
                .collect()
        };
        let (wavelets, fremens) = (named(".wmodel.json"), named(".fremen.json"));
        match (wavelets.is_empty(), fremens.is_empty()) {
            (false, true) => Ok(Models::Wavelet(
                wavelets.into_iter().map(WaveletModel::load).collect::<Result<_, _>>()?,
            )),
            (true, false) => Ok(Models::Fremen(
                fremens.into_iter().map(FremenModel::load).collect::<Result<_, _>>()?,
            )),
            (true, true) => bail!(UsageError(format!("no models in {}", dir.display()))),
            (false, false) => bail!(UsageError(format!("{} mixes wavelet and FreMEn models", dir.display()))),
        }
    }

    /// Forecasts every modelled sensor of `like` over its grid.
    pub fn forecast(&self, like: &Corpus) -> anyhow::Result<Corpus> {
        let start = like.grid.start_posix_s;
        let end = start + (like.grid.length as f64 * like.grid.period_s).round() as i64;
        let mut by_id = BTreeMap::new();
        match self {
            Models::Wavelet(ms) => {
                for m in ms {
                    by_id.insert(m.sensor_id.clone(), m.forecast_window(start, end)?);
                }
            }
            Models::Fremen(ms) => {
                for m in ms {
                    by_id.insert(m.sensor_id.clone(), m.forecast_window(start, end)?);
                }
            }
        }
        let sensors: Vec<_> = like.sensors.iter().filter(|i| by_id.contains_key(&i.sensor_id)).cloned().collect();
        if sensors.len() != by_id.len() {
            bail!(UsageError("models cover sensors missing from the corpus".into()));
        }
        let series = sensors.iter().map(|i| by_id.remove(&i.sensor_id).unwrap()).collect();
        Ok(Corpus {
            name: format!("{}-forecast", like.name),
            grid: like.grid,
            sensors,
            series,
            labels: Vec::new(),
            excluded_sensors: Vec::new(),
        })
    }
}

/// The part of `corpus` on `grid`, restricted to `sensor_ids` (in that order).
pub fn align(corpus: &Corpus, grid: &Grid, sensor_ids: &[String]) -> anyhow::Result<Corpus> {
    if (corpus.grid.period_s - grid.period_s).abs() > 1e-9 {
        bail!(UsageError("corpora have different sampling periods".into()));
    }
    let offset = (grid.start_posix_s - corpus.grid.start_posix_s) as f64 / grid.period_s;
    if offset < 0.0 || offset.fract() != 0.0 {
        bail!(UsageError("corpora are not on a common grid".into()));
    }
    let mut part = corpus.slice(offset as usize, grid.length)?;
    let mut sensors = Vec::new();
    let mut series = Vec::new();
    for id in sensor_ids {
        let i = part
            .sensors
            .iter()
            .position(|s| &s.sensor_id == id)
            .ok_or_else(|| UsageError(format!("sensor {id} missing from corpus {}", corpus.name)))?;
        sensors.push(part.sensors[i].clone());
        series.push(part.series[i].clone());
    }
    part.sensors = sensors;
    part.series = series;
    Ok(part)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForecastReport {
    pub per_sensor: BTreeMap<String, MetricsReport>,
    pub average: MetricsReport,
}

pub fn forecast_report(forecast: &Corpus, truth: &Corpus) -> anyhow::Result<ForecastReport> {
    let ids: Vec<String> = forecast.sensors.iter().map(|s| s.sensor_id.clone()).collect();
    let truth = align(truth, &forecast.grid, &ids)?;
    let mut per_sensor = BTreeMap::new();
    for (f, t) in forecast.series.iter().zip(&truth.series) {
        per_sensor.insert(f.sensor_id.clone(), binary_classification_metrics(&f.values, &t.values)?);
    }
    let average = average_reports(&per_sensor.values().copied().collect::<Vec<_>>());
    Ok(ForecastReport { per_sensor, average })
}

pub fn entropy_rows(
    real: &Corpus,
    expected: Option<&Corpus>,
    window_s: f64,
    stride_s: f64,
) -> anyhow::Result<Vec<EntropyRow>> {
    let real_stream = entropy_stream(&real.series, window_s, stride_s)?;
    let expected_stream = match expected {
        Some(e) => Some(entropy_stream(&e.series, window_s, stride_s)?),
        None => None,
    };
    Ok(pair_streams(&real_stream, expected_stream.as_deref())?)
}

pub fn similarity_report(rows: &[EntropyRow]) -> anyhow::Result<MetricsReport> {
    let real: Vec<f64> = rows.iter().map(|r| r.entropy_real).collect();
    let expected: Vec<f64> = rows
        .iter()
        .map(|r| r.entropy_expected.ok_or_else(|| UsageError("entropy CSV has no expected column".into())))
        .collect::<Result<_, _>>()?;
    Ok(similarity_metrics(&real, &expected)?)
}

pub fn write_entropy(path: &Path, rows: &[EntropyRow]) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    write_entropy_csv(rows, &mut buf)?;
    sensorwave::ingest::write_atomic(path, &buf)?;
    Ok(())
}

pub fn read_entropy(path: &Path) -> anyhow::Result<Vec<EntropyRow>> {
    let file = fs::File::open(path).map_err(|e| UsageError(format!("entropy {}: {e}", path.display())))?;
    Ok(read_entropy_csv(BufReader::new(file))?)
}

pub fn write_detection(path: &Path, run: &DetectionRun) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    sensorwave::inference::write_detection_csv(run, &mut buf)?;
    sensorwave::ingest::write_atomic(path, &buf)?;
    Ok(())
}

pub fn read_detection(path: &Path) -> anyhow::Result<DetectionRun> {
    let name = path
        .file_stem()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".into());
    let file = fs::File::open(path).map_err(|e| UsageError(format!("detections {}: {e}", path.display())))?;
    Ok(read_detection_csv(&name, BufReader::new(file))?)
}

/// Runs one detector on `rows`. The statistical baselines fit on
/// `train_rows` when given (the frozen prefix), on `rows` otherwise; LOF
/// always scores `rows` in-sample. `corpus` supplies door and motion
/// evidence for the network and is required for it.
pub fn detect(
    kind: DetectorKind,
    s: &Settings,
    rows: &[EntropyRow],
    train_rows: Option<&[EntropyRow]>,
    corpus: Option<&Corpus>,
) -> anyhow::Result<DetectionRun> {
    let r = s.resolved();
    let window = s.seconds(&r.window, "window")?;
    let rules = match corpus {
        Some(c) => s.rule_config(&c.sensor_ids_of(ReadingType::Contact), &c.sensor_ids_of(ReadingType::Motion))?,
        None => s.rule_config(&[], &[])?,
    };
    Ok(match kind {
        DetectorKind::Hmln => {
            let corpus = corpus.ok_or_else(|| UsageError("hmln needs --corpus for sensor evidence".into()))?;
            let timestamps: Vec<i64> = rows.iter().map(|r| r.timestamp).collect();
            let frames = evidence_stream(&corpus.series, &rules, &timestamps, window)?;
            detect_hmln(rows, &frames, &rules, true)?
        }
        DetectorKind::HmlnStar => detect_hmln(rows, &[], &rules, false)?,
        DetectorKind::Gaussian1d => match train_rows {
            Some(train) => {
                let all = [train, rows].concat();
                detect_gaussian1d(&all, Some(train.len()), r.z_threshold.unwrap())?.tail(train.len())
            }
            None => detect_gaussian1d(rows, None, r.z_threshold.unwrap())?,
        },
        DetectorKind::Lof => detect_lof(
            rows,
            r.lof_k.unwrap(),
            r.lof_threshold.unwrap(),
            s.lof_embedding(rules.utc_offset_s),
            None,
        )?,
    })
}

/// 1 for every window `[t, t + window_s)` that overlaps a labelled anomaly.
pub fn label_truth(timestamps: &[i64], window_s: f64, labels: &[AnomalyLabel]) -> Vec<u8> {
    let w = window_s.round() as i64;
    timestamps
        .iter()
        .map(|&t| u8::from(labels.iter().any(|l| t < l.end_posix_s && l.start_posix_s < t + w)))
        .collect()
}

pub fn read_runs(paths: &[impl AsRef<Path>]) -> anyhow::Result<Vec<DetectionRun>> {
    paths.iter().map(|p| read_detection(p.as_ref())).collect()
}
