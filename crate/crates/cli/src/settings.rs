//! Flags shared by every subcommand. A `--config` JSON file uses the same
//! field names (snake_case); flags on the command line win.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, ValueEnum};
use sensorwave::inference::{ClauseId, LofEmbedding, RuleConfig};
use sensorwave::model::{ModelParams, Threshold};
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum ModelKind {
    Wavelet,
    Fremen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum DetectorKind {
    Hmln,
    HmlnStar,
    Gaussian1d,
    Lof,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 4] = [
        DetectorKind::Hmln,
        DetectorKind::HmlnStar,
        DetectorKind::Gaussian1d,
        DetectorKind::Lof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetectorKind::Hmln => "hmln",
            DetectorKind::HmlnStar => "hmln_star",
            DetectorKind::Gaussian1d => "gaussian1d",
            DetectorKind::Lof => "lof",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Fold {
    All,
    Train,
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum EmbeddingKind {
    /// Entropy value alone.
    Value,
    /// Entropy value plus the time of day.
    TimeOfDay,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// `synthetic`, a JSON-lines export, or a corpus directory.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Field mapping for JSON-lines exports.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<ModelKind>,
    /// Training fold length, e.g. `28d`, `12h`, `3600s`.
    #[arg(long)]
    pub train_window: Option<String>,
    /// Testing fold length; the fold starts where training ends.
    #[arg(long)]
    pub test_window: Option<String>,
    /// Sampling period of the resampled grid.
    #[arg(long)]
    pub period: Option<String>,
    #[arg(long)]
    pub wavelet: Option<String>,
    #[arg(long)]
    pub levels: Option<usize>,
    /// A number, or `lossless`.
    #[arg(long)]
    pub tau: Option<String>,
    /// FreMEn harmonic count.
    #[arg(long)]
    pub components: Option<usize>,
    /// Rule configuration JSON.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    /// Clause weights, e.g. `combine=5,door_left_open=8`, or one number for all.
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, value_enum)]
    pub detector: Option<DetectorKind>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Entropy window length.
    #[arg(long)]
    pub window: Option<String>,
    /// Entropy stride.
    #[arg(long)]
    pub stride: Option<String>,
    #[arg(long, value_enum)]
    pub fold: Option<Fold>,
    /// Model directory written by `train`.
    #[arg(long)]
    pub models: Option<PathBuf>,
    /// Forecast directory written by `forecast`.
    #[arg(long)]
    pub expected: Option<PathBuf>,
    /// Entropy CSV written by `entropy`.
    #[arg(long)]
    pub entropy: Option<PathBuf>,
    /// Entropy CSV of the training fold, used to fit the statistical baselines.
    #[arg(long)]
    pub train_entropy: Option<PathBuf>,
    #[arg(long)]
    pub z_threshold: Option<f64>,
    #[arg(long)]
    pub lof_k: Option<usize>,
    #[arg(long)]
    pub lof_threshold: Option<f64>,
    #[arg(long, value_enum)]
    pub lof_embedding: Option<EmbeddingKind>,
    /// Detection CSVs to compare.
    #[arg(long, num_args = 1..)]
    pub runs: Option<Vec<PathBuf>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($top:expr, $base:expr; $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())).into())
    }

    /// Fields set here win over `base`.
    pub fn over(self, base: Settings) -> Settings {
        overlay!(self, base; corpus, mapping, kind, train_window, test_window, period, wavelet, levels, tau,
            components, rules, weights, detector, seed, window, stride, fold, models, expected, entropy,
            train_entropy, z_threshold, lof_k, lof_threshold, lof_embedding, runs, out)
    }

    /// Every defaulted field filled in, as recorded in run manifests.
    pub fn resolved(&self) -> Settings {
        let defaults = Settings {
            corpus: Some("synthetic".into()),
            train_window: Some("28d".into()),
            test_window: Some("7d".into()),
            period: Some("30s".into()),
            wavelet: Some(sensorwave::model::DEFAULT_WAVELET.into()),
            levels: Some(sensorwave::model::DEFAULT_LEVELS),
            tau: Some("lossless".into()),
            components: Some(sensorwave::fremen::DEFAULT_COMPONENTS),
            seed: Some(7),
            window: Some("30s".into()),
            stride: Some("30s".into()),
            z_threshold: Some(sensorwave::inference::DEFAULT_Z_THRESHOLD),
            lof_k: Some(sensorwave::inference::DEFAULT_LOF_K),
            lof_threshold: Some(sensorwave::inference::DEFAULT_LOF_THRESHOLD),
            lof_embedding: Some(EmbeddingKind::TimeOfDay),
            ..Settings::default()
        };
        self.clone().over(defaults)
    }

    pub fn require<'a, T>(value: &'a Option<T>, flag: &str) -> anyhow::Result<&'a T> {
        value.as_ref().ok_or_else(|| UsageError(format!("--{flag} is required")).into())
    }

    pub fn model_params(&self) -> anyhow::Result<ModelParams> {
        let r = self.resolved();
        let tau = r.tau.unwrap();
        let threshold = if tau.eq_ignore_ascii_case("lossless") {
            Threshold::Lossless
        } else {
            let v: f64 = tau
                .parse()
                .map_err(|_| UsageError(format!("--tau must be a number or 'lossless', got '{tau}'")))?;
            Threshold::Fixed(v)
        };
        Ok(ModelParams {
            wavelet_name: r.wavelet.unwrap(),
            levels: r.levels.unwrap(),
            threshold,
            ..ModelParams::default()
        })
    }

    pub fn seconds(&self, field: &Option<String>, flag: &str) -> anyhow::Result<f64> {
        let text = Self::require(field, flag)?;
        parse_duration(text).ok_or_else(|| UsageError(format!("--{flag}: bad duration '{text}'")).into())
    }

    pub fn lof_embedding(&self, utc_offset_s: i64) -> LofEmbedding {
        match self.resolved().lof_embedding.unwrap() {
            EmbeddingKind::Value => LofEmbedding::Value,
            EmbeddingKind::TimeOfDay => LofEmbedding::ValueAndTimeOfDay { utc_offset_s },
        }
    }

    /// Rules from `--rules` (defaults otherwise) with `--weights` applied.
    /// Door and motion sensors default to the corpus' contact and motion
    /// sensors when the file names none.
    pub fn rule_config(&self, doors: &[String], motions: &[String]) -> anyhow::Result<RuleConfig> {
        let mut rules = match &self.rules {
            Some(p) => RuleConfig::load(p).with_context(|| format!("rules {}", p.display()))?,
            None => RuleConfig::default(),
        };
        if rules.door_sensors.is_empty() {
            rules.door_sensors = doors.to_vec();
        }
        if rules.motion_sensors.is_empty() {
            rules.motion_sensors = motions.to_vec();
        }
        if let Some(w) = &self.weights {
            apply_weights(&mut rules, w)?;
        }
        rules.validate()?;
        Ok(rules)
    }
}

fn apply_weights(rules: &mut RuleConfig, spec: &str) -> anyhow::Result<()> {
    let bad = || UsageError(format!("--weights: cannot parse '{spec}'"));
    if let Ok(w) = spec.trim().parse::<f64>() {
        *rules = rules.clone().with_uniform_weight(w);
        return Ok(());
    }
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(bad)?;
        let clause: ClauseId = name.trim().parse().map_err(|_| bad())?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        if clause == ClauseId::Prior {
            rules.prior_weight = value;
        } else {
            rules.clause_weights.insert(clause, value);
        }
    }
    Ok(())
}

/// `90`, `90s`, `15m`, `12h`, `28d` in seconds.
pub fn parse_duration(text: &str) -> Option<f64> {
    let t = text.trim();
    let (num, scale) = match t.char_indices().last()? {
        (i, 's') => (&t[..i], 1.0),
        (i, 'm') => (&t[..i], 60.0),
        (i, 'h') => (&t[..i], 3600.0),
        (i, 'd') => (&t[..i], 86_400.0),
        _ => (t, 1.0),
    };
    let v: f64 = num.trim().parse().ok()?;
    (v.is_finite() && v > 0.0).then_some(v * scale)
}
