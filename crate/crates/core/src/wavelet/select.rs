use super::{dwt_padded, idwt, WaveletSpec};
use crate::error::{invalid, Result};

/// Per-candidate outcome of [`select_mother_wavelet`].
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateReport {
    pub family_name: String,
    /// RMSE of the binarized one-level reconstruction, per training signal.
    pub rmse_per_signal: Vec<f64>,
    pub mean_rmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSelection {
    pub best: WaveletSpec,
    pub report: Vec<CandidateReport>,
}

/// Picks the candidate whose thresholded, binarized one-level
/// reconstruction has the lowest mean RMSE over `training_signals`.
/// Ties go to the earlier candidate.
pub fn select_mother_wavelet(
    training_signals: &[Vec<f64>],
    candidates: &[WaveletSpec],
    threshold: f64,
    cutoff: f64,
) -> Result<WaveletSelection> {
    if candidates.is_empty() {
        return invalid("no candidate wavelets given");
    }
    if training_signals.is_empty() {
        return invalid("no training signals given");
    }
    if !(threshold >= 0.0) {
        return invalid(format!("threshold must be non-negative, got {threshold}"));
    }
    let mut report = Vec::with_capacity(candidates.len());
    for w in candidates {
        let rmse_per_signal = training_signals
            .iter()
            .map(|x| {
                let coeffs = dwt_padded(x, w, 1)?.zero_below(threshold);
                let recon = binarize(&idwt(&coeffs, w)?, cutoff);
                Ok(rmse(x, &recon))
            })
            .collect::<Result<Vec<_>>>()?;
        let mean_rmse = rmse_per_signal.iter().sum::<f64>() / rmse_per_signal.len() as f64;
        report.push(CandidateReport {
            family_name: w.family_name.clone(),
            rmse_per_signal,
            mean_rmse,
        });
    }
    let best_idx = report
        .iter()
        .enumerate()
        .fold(0, |best, (i, r)| if r.mean_rmse < report[best].mean_rmse { i } else { best });
    Ok(WaveletSelection {
        best: candidates[best_idx].clone(),
        report,
    })
}

/// 1.0 where `x >= cutoff`, else 0.0.
pub fn binarize(x: &[f64], cutoff: f64) -> Vec<f64> {
    x.iter().map(|&v| if v >= cutoff { 1.0 } else { 0.0 }).collect()
}

/// Root-mean-square difference; 0 for empty input.
pub fn rmse(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return 0.0;
    }
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (sum / a.len() as f64).sqrt()
}
