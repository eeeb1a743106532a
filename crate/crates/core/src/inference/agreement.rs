use serde::{Deserialize, Serialize};

use super::run::DetectionRun;
use crate::error::{invalid, Result};
use crate::metrics::Confusion;

/// `cells[r][c]`: percentage of the flags of run `r` also raised by run `c`.
/// A row is `None` throughout when its run raised no flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementMatrix {
    pub detectors: Vec<String>,
    pub cells: Vec<Vec<Option<f64>>>,
}

fn check_aligned(runs: &[DetectionRun]) -> Result<()> {
    let Some(first) = runs.first() else {
        return invalid("no detection runs");
    };
    for r in &runs[1..] {
        if r.timestamps != first.timestamps {
            return invalid(format!(
                "runs '{}' and '{}' are not time-aligned",
                first.detector_name, r.detector_name
            ));
        }
    }
    Ok(())
}

pub fn agreement_matrix(runs: &[DetectionRun]) -> Result<AgreementMatrix> {
    check_aligned(runs)?;
    let cells = runs
        .iter()
        .map(|r| {
            let own = r.flag_count();
            runs.iter()
                .map(|c| {
                    let both = r.flags.iter().zip(&c.flags).filter(|(a, b)| **a && **b).count();
                    (own > 0).then(|| 100.0 * both as f64 / own as f64)
                })
                .collect()
        })
        .collect();
    Ok(AgreementMatrix {
        detectors: runs.iter().map(|r| r.detector_name.clone()).collect(),
        cells,
    })
}

impl AgreementMatrix {
    /// Fixed-width table, undefined cells shown as `-`.
    pub fn to_table(&self) -> String {
        let width = self.detectors.iter().map(String::len).max().unwrap_or(0).max(7);
        let mut out = format!("{:width$}", "");
        for d in &self.detectors {
            out.push_str(&format!(" {d:>width$}"));
        }
        out.push('\n');
        for (d, row) in self.detectors.iter().zip(&self.cells) {
            out.push_str(&format!("{d:width$}"));
            for cell in row {
                match cell {
                    Some(v) => out.push_str(&format!(" {v:>width$.1}")),
                    None => out.push_str(&format!(" {:>width$}", "-")),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorScore {
    pub detector: String,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

/// Scores each run against the strict-majority vote of all runs. The
/// numbers only rank detectors relative to one another.
pub fn rank_f1_without_ground_truth(runs: &[DetectionRun]) -> Result<Vec<DetectorScore>> {
    if runs.len() < 3 {
        return invalid(format!("need at least 3 runs for a majority, got {}", runs.len()));
    }
    check_aligned(runs)?;
    let n = runs[0].len();
    let reference: Vec<bool> = (0..n)
        .map(|i| 2 * runs.iter().filter(|r| r.flags[i]).count() > runs.len())
        .collect();
    let mut scores: Vec<DetectorScore> = runs
        .iter()
        .map(|r| {
            let c = Confusion::from_flags(r.flags.iter().copied().zip(reference.iter().copied()));
            DetectorScore {
                detector: r.detector_name.clone(),
                precision: c.precision(),
                recall: c.recall(),
                f1: c.f1(),
            }
        })
        .collect();
    scores.sort_by(|a, b| {
        let key = |s: &DetectorScore| s.f1.unwrap_or(-1.0);
        key(b).total_cmp(&key(a)).then_with(|| a.detector.cmp(&b.detector))
    });
    Ok(scores)
}
