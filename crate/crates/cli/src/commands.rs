use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::bail;
use sensorwave::inference::{agreement_matrix, rank_f1_without_ground_truth, AgreementMatrix, DetectionRun};
use sensorwave::ingest::Corpus;
use sensorwave::metrics::{binary_classification_metrics, MetricsReport};
use serde::Serialize;

use crate::pipeline::{self, Models};
use crate::settings::{DetectorKind, Fold, ModelKind, Settings};
use crate::{write_json, write_text, Staged, UsageError};

fn out_dir(s: &Settings) -> anyhow::Result<Staged> {
    Staged::new(Settings::require(&s.out, "out")?)
}

fn real_corpus(s: &Settings) -> anyhow::Result<Corpus> {
    if s.corpus.is_none() {
        bail!(UsageError("--corpus is required".into()));
    }
    pipeline::load_corpus(s)
}

pub fn cmd_ingest(s: &Settings) -> anyhow::Result<PathBuf> {
    let out = out_dir(s)?;
    let corpus = pipeline::load_corpus(s)?;
    corpus.write_dir(&out.join("corpus"))?;
    out.commit("ingest", &s.resolved())
}

pub fn cmd_train(s: &Settings) -> anyhow::Result<PathBuf> {
    let kind = *Settings::require(&s.kind, "kind")?;
    let out = out_dir(s)?;
    let corpus = real_corpus(s)?;
    let train = pipeline::fold(s, &corpus, s.fold.unwrap_or(Fold::Train))?;
    let models = match kind {
        ModelKind::Wavelet => Models::train_wavelet(&train, &s.model_params()?)?,
        ModelKind::Fremen => Models::train_fremen(&train, s.resolved().components.unwrap())?,
    };
    models.save(&out.join("models"))?;
    out.commit("train", &s.resolved())
}

pub fn cmd_forecast(s: &Settings) -> anyhow::Result<PathBuf> {
    let models = Models::load(Settings::require(&s.models, "models")?)?;
    let out = out_dir(s)?;
    let corpus = real_corpus(s)?;
    let target = pipeline::fold(s, &corpus, s.fold.unwrap_or(Fold::Test))?;
    models.forecast(&target)?.write_dir(&out.join("corpus"))?;
    out.commit("forecast", &s.resolved())
}

pub fn cmd_entropy(s: &Settings) -> anyhow::Result<PathBuf> {
    let r = s.resolved();
    let (window, stride) = (s.seconds(&r.window, "window")?, s.seconds(&r.stride, "stride")?);
    let out = out_dir(s)?;
    let corpus = real_corpus(s)?;
    let rows = match &s.expected {
        Some(dir) => {
            let expected = Corpus::read_dir(&dir.join("corpus")).or_else(|_| Corpus::read_dir(dir))?;
            let ids: Vec<String> = expected.sensors.iter().map(|i| i.sensor_id.clone()).collect();
            let real = pipeline::align(&corpus, &expected.grid, &ids)?;
            pipeline::entropy_rows(&real, Some(&expected), window, stride)?
        }
        None => {
            let real = pipeline::fold(s, &corpus, s.fold.unwrap_or(Fold::All))?;
            pipeline::entropy_rows(&real, None, window, stride)?
        }
    };
    pipeline::write_entropy(&out.join("entropy.csv"), &rows)?;
    out.commit("entropy", &r)
}

pub fn cmd_detect(s: &Settings) -> anyhow::Result<PathBuf> {
    let kind = *Settings::require(&s.detector, "detector")?;
    let rows = pipeline::read_entropy(Settings::require(&s.entropy, "entropy")?)?;
    let train_rows = match &s.train_entropy {
        Some(p) => Some(pipeline::read_entropy(p)?),
        None => None,
    };
    let out = out_dir(s)?;
    let corpus = match (kind, &s.corpus) {
        (DetectorKind::Hmln, _) => Some(real_corpus(s)?),
        (_, Some(_)) => Some(pipeline::load_corpus(s)?),
        _ => None,
    };
    let run = pipeline::detect(kind, s, &rows, train_rows.as_deref(), corpus.as_ref())?;
    pipeline::write_detection(&out.join(&format!("{}.csv", kind.name())), &run)?;
    out.commit("detect", &s.resolved())
}

pub fn cmd_evaluate(s: &Settings) -> anyhow::Result<PathBuf> {
    let out = out_dir(s)?;
    match (&s.expected, &s.entropy) {
        (Some(dir), None) => {
            let forecast = Corpus::read_dir(&dir.join("corpus")).or_else(|_| Corpus::read_dir(dir))?;
            let report = pipeline::forecast_report(&forecast, &real_corpus(s)?)?;
            write_json(&out.join("forecast_metrics.json"), &report)?;
        }
        (None, Some(csv)) => {
            let report = pipeline::similarity_report(&pipeline::read_entropy(csv)?)?;
            write_json(&out.join("entropy_similarity.json"), &report)?;
        }
        _ => bail!(UsageError("evaluate needs exactly one of --expected or --entropy".into())),
    }
    out.commit("evaluate", &s.resolved())
}

pub fn cmd_compare(s: &Settings) -> anyhow::Result<PathBuf> {
    let runs = pipeline::read_runs(Settings::require(&s.runs, "runs")?)?;
    let out = out_dir(s)?;
    write_comparison(&out, "", &runs)?;
    out.commit("compare", &s.resolved())
}

fn write_comparison(out: &Staged, prefix: &str, runs: &[DetectionRun]) -> anyhow::Result<()> {
    let matrix = agreement_matrix(runs)?;
    write_text(&out.join(&format!("{prefix}agreement.csv")), &agreement_csv(&matrix))?;
    write_text(&out.join(&format!("{prefix}agreement.txt")), &matrix.to_table())?;
    if runs.len() >= 3 {
        write_json(&out.join(&format!("{prefix}ranking.json")), &rank_f1_without_ground_truth(runs)?)?;
    }
    Ok(())
}

/// `detector,<names...>` header, one row per detector, empty cells where
/// the row is undefined.
pub fn agreement_csv(m: &AgreementMatrix) -> String {
    let mut text = format!("detector,{}\n", m.detectors.join(","));
    for (name, row) in m.detectors.iter().zip(&m.cells) {
        let cells: Vec<String> = row.iter().map(|c| c.map(|v| v.to_string()).unwrap_or_default()).collect();
        text.push_str(&format!("{name},{}\n", cells.join(",")));
    }
    text
}

#[derive(Serialize)]
struct DetectionScore {
    flags: usize,
    labelled_windows: usize,
    metrics: MetricsReport,
}

/// The whole chain on one corpus: ingest, train both models, forecast the
/// test fold, entropy streams, all four detectors, reports.
pub fn cmd_run(s: &Settings) -> anyhow::Result<PathBuf> {
    let r = s.resolved();
    let (window, stride) = (s.seconds(&r.window, "window")?, s.seconds(&r.stride, "stride")?);
    let out = out_dir(s)?;

    let corpus = pipeline::load_corpus(s)?;
    corpus.write_dir(&out.join("corpus"))?;
    let (train, test) = pipeline::folds(s, &corpus)?;

    let wavelet = Models::train_wavelet(&train, &s.model_params()?)?;
    let fremen = Models::train_fremen(&train, r.components.unwrap())?;
    wavelet.save(&out.join("models/wavelet"))?;
    fremen.save(&out.join("models/fremen"))?;

    let wavelet_forecast = wavelet.forecast(&test)?;
    let fremen_forecast = fremen.forecast(&test)?;
    wavelet_forecast.write_dir(&out.join("forecasts/wavelet"))?;
    fremen_forecast.write_dir(&out.join("forecasts/fremen"))?;
    write_json(
        &out.join("reports/forecast_wavelet.json"),
        &pipeline::forecast_report(&wavelet_forecast, &test)?,
    )?;
    write_json(
        &out.join("reports/forecast_fremen.json"),
        &pipeline::forecast_report(&fremen_forecast, &test)?,
    )?;

    let train_rows = pipeline::entropy_rows(&train, None, window, stride)?;
    let test_rows = pipeline::entropy_rows(&test, Some(&wavelet_forecast), window, stride)?;
    let fremen_rows = pipeline::entropy_rows(&test, Some(&fremen_forecast), window, stride)?;
    pipeline::write_entropy(&out.join("entropy/train.csv"), &train_rows)?;
    pipeline::write_entropy(&out.join("entropy/test.csv"), &test_rows)?;
    pipeline::write_entropy(&out.join("entropy/test_fremen.csv"), &fremen_rows)?;
    let mut similarity = BTreeMap::new();
    similarity.insert("wavelet", pipeline::similarity_report(&test_rows)?);
    similarity.insert("fremen", pipeline::similarity_report(&fremen_rows)?);
    write_json(&out.join("reports/entropy_similarity.json"), &similarity)?;

    let detectors = match r.detector {
        Some(d) => vec![d],
        None => DetectorKind::ALL.to_vec(),
    };
    let mut runs = Vec::new();
    for kind in detectors {
        let run = pipeline::detect(kind, s, &test_rows, Some(&train_rows), Some(&test))?;
        pipeline::write_detection(&out.join(&format!("detections/{}.csv", kind.name())), &run)?;
        runs.push(run);
    }

    let truth = pipeline::label_truth(&runs[0].timestamps, window, &test.labels);
    let mut scores = BTreeMap::new();
    for run in &runs {
        let flags: Vec<u8> = run.flags.iter().map(|&f| u8::from(f)).collect();
        scores.insert(
            run.detector_name.clone(),
            DetectionScore {
                flags: run.flag_count(),
                labelled_windows: truth.iter().filter(|&&t| t == 1).count(),
                metrics: binary_classification_metrics(&flags, &truth)?,
            },
        );
    }
    write_json(&out.join("reports/detection_vs_labels.json"), &scores)?;
    write_comparison(&out, "compare/", &runs)?;
    out.commit("run", &r)
}
