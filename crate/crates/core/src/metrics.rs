//! Forecast and entropy-similarity metrics, reported as percentages.
//!
//! Undefined values (a zero denominator) are `None`, never a silent zero.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl Confusion {
    /// Positive class is "on" / "flagged".
    pub fn from_flags<I: IntoIterator<Item = (bool, bool)>>(pairs: I) -> Self {
        let mut c = Self::default();
        for (predicted, truth) in pairs {
            match (predicted, truth) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, false) => c.tn += 1,
                (false, true) => c.fn_ += 1,
            }
        }
        c
    }

    fn ratio(num: usize, den: usize) -> Option<f64> {
        (den > 0).then(|| num as f64 / den as f64)
    }

    pub fn precision(&self) -> Option<f64> {
        Self::ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> Option<f64> {
        Self::ratio(self.tp, self.tp + self.fn_)
    }

    pub fn accuracy(&self) -> Option<f64> {
        Self::ratio(self.tp + self.tn, self.tp + self.fp + self.tn + self.fn_)
    }

    /// `2TP / (2TP + FP + FN)`: the harmonic mean of precision and recall
    /// wherever both exist, and still defined when only one side has
    /// positives.
    pub fn f1(&self) -> Option<f64> {
        Self::ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub accuracy: Option<f64>,
    pub f1: Option<f64>,
    pub rmse: Option<f64>,
    pub pearson_correlation: Option<f64>,
    pub explained_variance: Option<f64>,
}

fn pct(x: Option<f64>) -> Option<f64> {
    x.map(|v| 100.0 * v)
}

pub fn binary_classification_metrics(predicted: &[u8], truth: &[u8]) -> Result<MetricsReport> {
    if predicted.len() != truth.len() {
        return invalid(format!("length mismatch: {} vs {}", predicted.len(), truth.len()));
    }
    if predicted.is_empty() {
        return invalid("no samples to compare");
    }
    let c = Confusion::from_flags(predicted.iter().zip(truth).map(|(&p, &t)| (p == 1, t == 1)));
    Ok(MetricsReport {
        precision: pct(c.precision()),
        recall: pct(c.recall()),
        accuracy: pct(c.accuracy()),
        f1: pct(c.f1()),
        ..MetricsReport::default()
    })
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn variance(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / x.len() as f64
}

/// Similarity of a predicted stream `b` to the real stream `a`, both in
/// `[0, 1]`: RMSE, Pearson correlation and explained variance
/// `1 - Var(a - b) / Var(a)`, all as percentages. Explained variance is
/// negative when the prediction is worse than the mean of `a`.
pub fn similarity_metrics(a: &[f64], b: &[f64]) -> Result<MetricsReport> {
    if a.len() != b.len() {
        return invalid(format!("length mismatch: {} vs {}", a.len(), b.len()));
    }
    if a.len() < 2 {
        return invalid("need at least two samples");
    }
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let rmse = (diff.iter().map(|d| d * d).sum::<f64>() / a.len() as f64).sqrt();
    let (ma, mb) = (mean(a), mean(b));
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let sa = a.iter().map(|x| (x - ma) * (x - ma)).sum::<f64>().sqrt();
    let sb = b.iter().map(|y| (y - mb) * (y - mb)).sum::<f64>().sqrt();
    let corr = (sa > 0.0 && sb > 0.0).then(|| (cov / (sa * sb)).clamp(-1.0, 1.0));
    let var_a = variance(a);
    let expl = (var_a > 0.0).then(|| 1.0 - variance(&diff) / var_a);
    Ok(MetricsReport {
        rmse: Some(100.0 * rmse),
        pearson_correlation: pct(corr),
        explained_variance: pct(expl),
        ..MetricsReport::default()
    })
}

/// Field-wise mean over the reports that define each field.
pub fn average_reports(reports: &[MetricsReport]) -> MetricsReport {
    let avg = |f: fn(&MetricsReport) -> Option<f64>| {
        let vals: Vec<f64> = reports.iter().filter_map(f).collect();
        (!vals.is_empty()).then(|| mean(&vals))
    };
    MetricsReport {
        precision: avg(|r| r.precision),
        recall: avg(|r| r.recall),
        accuracy: avg(|r| r.accuracy),
        f1: avg(|r| r.f1),
        rmse: avg(|r| r.rmse),
        pearson_correlation: avg(|r| r.pearson_correlation),
        explained_variance: avg(|r| r.explained_variance),
    }
}
