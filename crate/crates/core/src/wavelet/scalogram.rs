use std::io::Write;

use super::{dwt, WaveletSpec};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalogramRow {
    pub level: usize,
    pub shift: usize,
    pub magnitude: f64,
}

/// Scale/time magnitudes of the detail coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    pub rows: Vec<ScalogramRow>,
    /// `level_mean_energy[j - 1]` is the mean of `d_{j,k}^2` over `k`.
    pub level_mean_energy: Vec<f64>,
}

pub fn scalogram_export(signal: &[f64], wavelet: &WaveletSpec, levels: usize) -> Result<Scalogram> {
    let coeffs = dwt(signal, wavelet, levels)?;
    let mut rows = Vec::with_capacity(signal.len());
    let mut level_mean_energy = Vec::with_capacity(levels);
    for (i, d) in coeffs.details.iter().enumerate() {
        rows.extend(d.iter().enumerate().map(|(k, c)| ScalogramRow {
            level: i + 1,
            shift: k,
            magnitude: c.abs(),
        }));
        level_mean_energy.push(d.iter().map(|c| c * c).sum::<f64>() / d.len() as f64);
    }
    Ok(Scalogram {
        rows,
        level_mean_energy,
    })
}

/// Writes `level,shift,magnitude` rows.
pub fn write_scalogram_csv<W: Write>(scalogram: &Scalogram, mut out: W) -> Result<()> {
    writeln!(out, "level,shift,magnitude")?;
    for r in &scalogram.rows {
        writeln!(out, "{},{},{}", r.level, r.shift, r.magnitude)?;
    }
    Ok(())
}
