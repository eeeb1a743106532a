//! Statistical baselines over an entropy stream.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::DetectionRun;
use crate::activity::EntropyRow;
use crate::error::{invalid, Result};

pub const DEFAULT_Z_THRESHOLD: f64 = 3.0;
pub const DEFAULT_LOF_K: usize = 20;
pub const DEFAULT_LOF_THRESHOLD: f64 = 1.5;

/// Added to the mean reachability distance so duplicate points keep a
/// finite density.
const LRD_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianDetector {
    pub mean: f64,
    /// Population standard deviation of the training values.
    pub std_dev: f64,
    pub z_threshold: f64,
}

impl GaussianDetector {
    pub fn fit(training: &[f64], z_threshold: f64) -> Result<Self> {
        if training.len() < 2 {
            return invalid("need at least 2 training samples");
        }
        if !(z_threshold >= 0.0) {
            return invalid(format!("z threshold must be non-negative, got {z_threshold}"));
        }
        let n = training.len() as f64;
        let mean = training.iter().sum::<f64>() / n;
        let var = training.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Ok(Self {
            mean,
            std_dev: var.sqrt(),
            z_threshold,
        })
    }

    /// `|x - mean| / std`; infinite off the mean of a degenerate fit.
    pub fn score(&self, x: f64) -> f64 {
        let dev = (x - self.mean).abs();
        if self.std_dev > 0.0 {
            dev / self.std_dev
        } else if dev > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    pub fn flags(&self, x: f64) -> bool {
        (x - self.mean).abs() > self.z_threshold * self.std_dev
    }
}

/// Fits on the first `training_len` rows (all rows when `None`), then scores
/// every row.
pub fn detect_gaussian1d(rows: &[EntropyRow], training_len: Option<usize>, z_threshold: f64) -> Result<DetectionRun> {
    let values: Vec<f64> = rows.iter().map(|r| r.entropy_real).collect();
    let train = training_len.unwrap_or(values.len());
    if train > values.len() {
        return invalid(format!("training prefix {train} longer than the stream ({})", values.len()));
    }
    let g = GaussianDetector::fit(&values[..train], z_threshold)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("z_threshold".into(), z_threshold.to_string());
    parameters.insert("training_len".into(), train.to_string());
    parameters.insert("mean".into(), g.mean.to_string());
    parameters.insert("std_dev".into(), g.std_dev.to_string());
    DetectionRun::new(
        "gaussian1d",
        rows.iter().map(|r| r.timestamp).collect(),
        values.iter().map(|&x| g.flags(x)).collect(),
        values.iter().map(|&x| g.score(x)).collect(),
        vec![Vec::new(); rows.len()],
        parameters,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LofEmbedding {
    /// The entropy value alone.
    Value,
    /// `(value, sin, cos)` of the local time of day, so neighbours come
    /// from the same part of the daily cycle.
    ValueAndTimeOfDay { utc_offset_s: i64 },
}

impl Default for LofEmbedding {
    fn default() -> Self {
        LofEmbedding::ValueAndTimeOfDay { utc_offset_s: 0 }
    }
}

impl LofEmbedding {
    pub fn embed(self, timestamp: i64, value: f64) -> [f64; 3] {
        match self {
            LofEmbedding::Value => [value, 0.0, 0.0],
            LofEmbedding::ValueAndTimeOfDay { utc_offset_s } => {
                let phase = (timestamp + utc_offset_s).rem_euclid(86_400) as f64 / 86_400.0 * std::f64::consts::TAU;
                [value, phase.sin(), phase.cos()]
            }
        }
    }
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Local outlier factor over a frozen reference set.
#[derive(Debug, Clone, PartialEq)]
pub struct LofModel {
    pub k: usize,
    pub points: Vec<[f64; 3]>,
    k_distance: Vec<f64>,
    lrd: Vec<f64>,
    /// In-sample neighbour lists (self excluded).
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl LofModel {
    /// The `k` nearest reference points to `q`; ties go to the lower index.
    fn knn(points: &[[f64; 3]], q: &[f64; 3], k: usize, skip: Option<usize>) -> Vec<(usize, f64)> {
        let mut d: Vec<(usize, f64)> = points
            .iter()
            .enumerate()
            .filter(|(j, _)| Some(*j) != skip)
            .map(|(j, p)| (j, dist(q, p)))
            .collect();
        let cmp = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
        if d.len() > k {
            d.select_nth_unstable_by(k - 1, cmp);
            d.truncate(k);
            // Neighbour lists are kept for every point; drop the scan buffer.
            d.shrink_to_fit();
        }
        d.sort_by(cmp);
        d
    }

    pub fn fit(points: Vec<[f64; 3]>, k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("neighbour count must be positive");
        }
        if k >= points.len() {
            return invalid(format!("need more than {k} points, got {}", points.len()));
        }
        let neighbors: Vec<Vec<(usize, f64)>> =
            (0..points.len()).into_par_iter().map(|i| Self::knn(&points, &points[i], k, Some(i))).collect();
        let k_distance: Vec<f64> = neighbors.iter().map(|nb| nb[k - 1].1).collect();
        let lrd = neighbors.iter().map(|nb| Self::density(nb, &k_distance)).collect();
        Ok(Self {
            k,
            points,
            k_distance,
            lrd,
            neighbors,
        })
    }

    fn density(nb: &[(usize, f64)], k_distance: &[f64]) -> f64 {
        let reach: f64 = nb.iter().map(|&(j, d)| d.max(k_distance[j])).sum::<f64>() / nb.len() as f64;
        1.0 / (reach + LRD_EPSILON)
    }

    fn factor(&self, nb: &[(usize, f64)], own_lrd: f64) -> f64 {
        nb.iter().map(|&(j, _)| self.lrd[j]).sum::<f64>() / nb.len() as f64 / own_lrd
    }

    /// LOF of each reference point against the others.
    pub fn in_sample_scores(&self) -> Vec<f64> {
        self.neighbors.iter().zip(&self.lrd).map(|(nb, &l)| self.factor(nb, l)).collect()
    }

    /// LOF of a new point against the frozen reference set.
    pub fn score(&self, q: &[f64; 3]) -> f64 {
        let nb = Self::knn(&self.points, q, self.k, None);
        self.factor(&nb, Self::density(&nb, &self.k_distance))
    }
}

/// LOF per row. With a training prefix the reference set is frozen to the
/// prefix and every row is scored as a new point; otherwise scores are
/// in-sample.
pub fn detect_lof(
    rows: &[EntropyRow],
    k: usize,
    lof_threshold: f64,
    embedding: LofEmbedding,
    training_len: Option<usize>,
) -> Result<DetectionRun> {
    let points: Vec<[f64; 3]> = rows.iter().map(|r| embedding.embed(r.timestamp, r.entropy_real)).collect();
    let scores = match training_len {
        None => LofModel::fit(points, k)?.in_sample_scores(),
        Some(n) if n > points.len() => {
            return invalid(format!("training prefix {n} longer than the stream ({})", points.len()));
        }
        Some(n) => {
            let model = LofModel::fit(points[..n].to_vec(), k)?;
            points.par_iter().map(|p| model.score(p)).collect()
        }
    };
    let mut parameters = BTreeMap::new();
    parameters.insert("neighbors_k".into(), k.to_string());
    parameters.insert("lof_threshold".into(), lof_threshold.to_string());
    parameters.insert("embedding".into(), serde_json::to_string(&embedding)?);
    if let Some(n) = training_len {
        parameters.insert("training_len".into(), n.to_string());
    }
    DetectionRun::new(
        "lof",
        rows.iter().map(|r| r.timestamp).collect(),
        scores.iter().map(|&s| s > lof_threshold).collect(),
        scores,
        vec![Vec::new(); rows.len()],
        parameters,
    )
}
