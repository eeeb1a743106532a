//! Thresholded wavelet models of periodic binary sensors.
//!
//! A model keeps the wavelet coefficients of one training period whose
//! magnitude reaches the threshold `tau`, plus the metadata needed to map any
//! timestamp back onto that period: sample count `N`, sampling frequency and
//! the time reference `t0`. Forecasting reconstructs the period once,
//! binarizes it and indexes it with `ceil((t - t0) * fs) mod N`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::series::SensorSeries;
use crate::wavelet::{self, Band, CoefficientSet, WaveletSpec};

pub const MODEL_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_WAVELET: &str = "rbio3.1";
pub const DEFAULT_LEVELS: usize = 1;
/// Reference threshold reported for the office deployment; per-sensor
/// lossless thresholds are the default when building.
pub const REFERENCE_TAU: f64 = 0.54;
pub const DEFAULT_CUTOFF: f64 = 0.5;

/// Position of one coefficient inside a [`CoefficientSet`].
pub type CoefficientKey = (Band, usize);

/// Kept coefficients after thresholding.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KeptCoefficients {
    pub values: BTreeMap<CoefficientKey, f64>,
}

impl KeptCoefficients {
    pub fn kept_count(&self) -> usize {
        self.values.len()
    }

    /// Writes the kept values into an otherwise zero coefficient set.
    pub fn densify(
        &self,
        levels: usize,
        original_length: usize,
        padded_length: usize,
    ) -> Result<CoefficientSet> {
        let mut dense = CoefficientSet::zeros(levels, original_length, padded_length)?;
        for (&(band, k), &v) in &self.values {
            let slot = dense
                .band_mut(band)
                .and_then(|b| b.get_mut(k))
                .ok_or_else(|| Error::InvalidInput(format!("coefficient ({band}, {k}) out of range")))?;
            *slot = v;
        }
        Ok(dense)
    }
}

impl Serialize for KeptCoefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(|(&(band, k), &v)| (band, k, v)))
    }
}

impl<'de> Deserialize<'de> for KeptCoefficients {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(Band, usize, f64)>::deserialize(d)?;
        let mut values = BTreeMap::new();
        for (band, k, v) in triples {
            if values.insert((band, k), v).is_some() {
                return Err(serde::de::Error::custom(format!(
                    "duplicate coefficient ({band}, {k})"
                )));
            }
        }
        Ok(Self { values })
    }
}

/// Keeps exactly the coefficients with `|c| >= tau`.
pub fn threshold_coefficients(coeffs: &CoefficientSet, tau: f64) -> Result<KeptCoefficients> {
    if !(tau >= 0.0) {
        return invalid(format!("threshold must be non-negative, got {tau}"));
    }
    let values = coeffs
        .iter()
        .filter(|&(_, _, v)| v.abs() >= tau)
        .map(|(band, k, v)| ((band, k), v))
        .collect();
    Ok(KeptCoefficients { values })
}

/// How the coefficient threshold is chosen when building a model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Fixed(f64),
    /// The largest threshold whose binarized reconstruction still equals the
    /// training signal.
    Lossless,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub wavelet_name: String,
    pub levels: usize,
    pub threshold: Threshold,
    pub binarize_cutoff: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            wavelet_name: DEFAULT_WAVELET.to_string(),
            levels: DEFAULT_LEVELS,
            threshold: Threshold::Lossless,
            binarize_cutoff: DEFAULT_CUTOFF,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildDiagnostics {
    pub kept_count: usize,
    /// RMSE between the training signal and the binarized reconstruction.
    pub training_rmse: f64,
}

/// Memoized binarized reconstruction; ignored by equality and serialization.
#[derive(Debug, Default)]
struct ReconstructionCache(OnceLock<std::result::Result<Arc<[u8]>, String>>);

impl Clone for ReconstructionCache {
    fn clone(&self) -> Self {
        Self::default()
    }
}

impl PartialEq for ReconstructionCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveletModel {
    pub format_version: u32,
    pub sensor_id: String,
    pub location: String,
    pub wavelet_name: String,
    pub levels: usize,
    pub threshold: f64,
    pub period_samples: usize,
    /// Transformed length: `period_samples` rounded up to a multiple of `2^levels`.
    pub padded_length: usize,
    pub sampling_frequency_hz: f64,
    pub time_reference_posix_s: i64,
    pub binarize_cutoff: f64,
    pub diagnostics: BuildDiagnostics,
    pub kept_coefficients: KeptCoefficients,
    #[serde(skip)]
    cache: ReconstructionCache,
}

/// Sample index and binary value forecast for one timestamp.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Forecast {
    pub index: usize,
    pub value: u8,
}

/// Builds a model from one training period.
pub fn build_model(series: &SensorSeries, params: &ModelParams) -> Result<WaveletModel> {
    series.validate()?;
    if series.is_empty() {
        return invalid(format!("sensor {}: empty training series", series.sensor_id));
    }
    if !(params.binarize_cutoff > 0.0 && params.binarize_cutoff < 1.0) {
        return invalid(format!(
            "binarization cutoff must lie in (0, 1), got {}",
            params.binarize_cutoff
        ));
    }
    let wavelet = WaveletSpec::from_name(&params.wavelet_name)?;
    let signal = series.as_f64();
    let coeffs = wavelet::dwt_padded(&signal, &wavelet, params.levels)?;
    let tau = match params.threshold {
        Threshold::Fixed(t) => t,
        Threshold::Lossless => lossless_threshold(&coeffs, &wavelet, &signal, params.binarize_cutoff)?,
    };
    let kept = threshold_coefficients(&coeffs, tau)?;
    let recon = reconstruct_values(&kept, &wavelet, &coeffs, params.binarize_cutoff)?;
    let training_rmse = wavelet::rmse(&signal, &recon);
    Ok(WaveletModel {
        format_version: MODEL_FORMAT_VERSION,
        sensor_id: series.sensor_id.clone(),
        location: series.location.clone(),
        wavelet_name: wavelet.family_name,
        levels: params.levels,
        threshold: tau,
        period_samples: series.len(),
        padded_length: coeffs.padded_length,
        sampling_frequency_hz: series.sampling_frequency_hz,
        time_reference_posix_s: series.time_reference_posix_s,
        binarize_cutoff: params.binarize_cutoff,
        diagnostics: BuildDiagnostics {
            kept_count: kept.kept_count(),
            training_rmse,
        },
        kept_coefficients: kept,
        cache: ReconstructionCache::default(),
    })
}

fn reconstruct_values(
    kept: &KeptCoefficients,
    wavelet: &WaveletSpec,
    layout: &CoefficientSet,
    cutoff: f64,
) -> Result<Vec<f64>> {
    let dense = kept.densify(layout.level_count, layout.original_length, layout.padded_length)?;
    Ok(wavelet::binarize(&wavelet::idwt(&dense, wavelet)?, cutoff))
}

/// Largest threshold that still reconstructs `signal` exactly after
/// binarization.
///
/// Candidate thresholds are the distinct coefficient magnitudes, scanned in
/// ascending order until the first lossy one; each step costs one inverse
/// transform, and binary inputs produce only a handful of distinct
/// magnitudes.
pub fn lossless_threshold(
    coeffs: &CoefficientSet,
    wavelet: &WaveletSpec,
    signal: &[f64],
    cutoff: f64,
) -> Result<f64> {
    let mut magnitudes: Vec<f64> = coeffs.iter().map(|(_, _, v)| v.abs()).collect();
    magnitudes.sort_by(f64::total_cmp);
    magnitudes.dedup();
    let mut best = 0.0;
    for &tau in &magnitudes {
        let recon = wavelet::binarize(&wavelet::idwt(&coeffs.zero_below(tau), wavelet)?, cutoff);
        if recon != signal {
            break;
        }
        best = tau;
    }
    Ok(best)
}

/// Smallest per-series lossless threshold: one `tau` that reconstructs every
/// series in the set exactly.
pub fn shared_lossless_threshold(series_set: &[SensorSeries], params: &ModelParams) -> Result<f64> {
    let wavelet = WaveletSpec::from_name(&params.wavelet_name)?;
    let mut shared = f64::INFINITY;
    for s in series_set {
        let signal = s.as_f64();
        let coeffs = wavelet::dwt_padded(&signal, &wavelet, params.levels)?;
        shared = shared.min(lossless_threshold(&coeffs, &wavelet, &signal, params.binarize_cutoff)?);
    }
    if shared.is_finite() {
        Ok(shared)
    } else {
        invalid("no series given")
    }
}

impl WaveletModel {
    pub fn wavelet(&self) -> Result<WaveletSpec> {
        WaveletSpec::from_name(&self.wavelet_name)
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Data(format!(
                "unsupported model format version {}",
                self.format_version
            )));
        }
        self.wavelet()?;
        if self.levels == 0 || self.levels >= usize::BITS as usize {
            return invalid(format!("bad decomposition level {}", self.levels));
        }
        let block = 1usize << self.levels;
        if self.period_samples == 0
            || self.padded_length % block != 0
            || self.padded_length != self.period_samples.div_ceil(block) * block
        {
            return invalid(format!(
                "period {} and padded length {} do not match level {}",
                self.period_samples, self.padded_length, self.levels
            ));
        }
        if !(self.sampling_frequency_hz.is_finite() && self.sampling_frequency_hz > 0.0) {
            return invalid("sampling frequency must be positive");
        }
        if !(self.binarize_cutoff > 0.0 && self.binarize_cutoff < 1.0) {
            return invalid("binarization cutoff must lie in (0, 1)");
        }
        // Rejects out-of-range coefficient positions.
        self.kept_coefficients
            .densify(self.levels, self.period_samples, self.padded_length)?;
        Ok(())
    }

    /// Binarized reconstruction of the whole period.
    pub fn reconstruct(&self) -> Result<Vec<u8>> {
        let wavelet = self.wavelet()?;
        let dense = self
            .kept_coefficients
            .densify(self.levels, self.period_samples, self.padded_length)?;
        let values = wavelet::idwt(&dense, &wavelet)?;
        Ok(values
            .iter()
            .map(|&v| u8::from(v >= self.binarize_cutoff))
            .collect())
    }

    fn cached_reconstruction(&self) -> Result<&[u8]> {
        self.cache
            .0
            .get_or_init(|| self.reconstruct().map(Arc::from).map_err(|e| e.to_string()))
            .as_deref()
            .map_err(|e| Error::Config(e.clone()))
    }

    /// `ceil((t - t0) * fs) mod N`; earlier timestamps wrap the same way.
    pub fn forecast_index(&self, t_posix_s: i64) -> usize {
        let elapsed = (t_posix_s - self.time_reference_posix_s) as f64 * self.sampling_frequency_hz;
        let n = self.period_samples as i64;
        ceil_tolerant(elapsed).rem_euclid(n) as usize
    }

    pub fn forecast(&self, t_posix_s: i64) -> Result<Forecast> {
        let index = self.forecast_index(t_posix_s);
        let value = self.cached_reconstruction()?[index];
        Ok(Forecast { index, value })
    }

    /// Forecast on the model's sampling grid over `[t_start, t_end)`.
    ///
    /// An empty window (`t_start == t_end`) yields a single sample.
    pub fn forecast_window(&self, t_start: i64, t_end: i64) -> Result<SensorSeries> {
        if t_end < t_start {
            return invalid(format!("window end {t_end} precedes start {t_start}"));
        }
        let count = (ceil_tolerant((t_end - t_start) as f64 * self.sampling_frequency_hz) as usize).max(1);
        let recon = self.cached_reconstruction()?;
        let first = self.forecast_index(t_start);
        let values = (0..count)
            .map(|m| recon[(first + m) % self.period_samples])
            .collect();
        SensorSeries::new(
            self.sensor_id.clone(),
            values,
            self.sampling_frequency_hz,
            t_start,
            self.location.clone(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    /// File name used inside model directories.
    pub fn file_name(sensor_id: &str) -> String {
        format!("{sensor_id}.wmodel.json")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::ingest::write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Ceiling that treats values within float noise of an integer as that
/// integer, so `45 s * (1/30 Hz)` gives 2 and `30 s * (1/30 Hz)` gives 1.
pub(crate) fn ceil_tolerant(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as i64
    } else {
        x.ceil() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const FS: f64 = 1.0 / 30.0;

    fn series(values: Vec<u8>) -> SensorSeries {
        SensorSeries::new("m1", values, FS, 1_510_012_800, "Entrance").unwrap()
    }

    fn random_binary(seed: u64, n: usize, p: f64) -> Vec<u8> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| u8::from(rng.gen_bool(p))).collect()
    }

    fn fixed(tau: f64) -> ModelParams {
        ModelParams {
            threshold: Threshold::Fixed(tau),
            ..ModelParams::default()
        }
    }

    #[test]
    fn threshold_handbuilt_set() {
        let c = CoefficientSet {
            averaging: vec![2.0, -0.3],
            details: vec![vec![0.6, -0.54]],
            level_count: 1,
            original_length: 4,
            padded_length: 4,
        };
        let kept = threshold_coefficients(&c, 0.54).unwrap();
        assert_eq!(kept.kept_count(), 3);
        let vals: Vec<f64> = kept.values.values().copied().collect();
        assert_eq!(vals, vec![2.0, 0.6, -0.54]);
        assert!(threshold_coefficients(&c, -0.1).is_err());
        assert_eq!(threshold_coefficients(&c, 0.0).unwrap().kept_count(), 4);
        assert_eq!(threshold_coefficients(&c, 3.0).unwrap().kept_count(), 0);
    }

    #[test]
    fn zero_series_reconstructs_zero() {
        let m = build_model(&series(vec![0; 64]), &fixed(REFERENCE_TAU)).unwrap();
        assert_eq!(m.reconstruct().unwrap(), vec![0; 64]);
        assert_eq!(m.diagnostics.training_rmse, 0.0);
    }

    #[test]
    fn tau_zero_is_exact() {
        let x = random_binary(11, 512, 0.3);
        let m = build_model(&series(x.clone()), &fixed(0.0)).unwrap();
        assert_eq!(m.diagnostics.kept_count, 512);
        assert_eq!(m.diagnostics.training_rmse, 0.0);
        assert_eq!(m.reconstruct().unwrap(), x);
    }

    #[test]
    fn lossless_tau_is_exact_and_maximal() {
        let x = random_binary(12, 1000, 0.1);
        let m = build_model(&series(x.clone()), &ModelParams::default()).unwrap();
        assert_eq!(m.reconstruct().unwrap(), x);
        assert_eq!(m.diagnostics.training_rmse, 0.0);
        // Every stored magnitude reaches tau.
        assert!(m.kept_coefficients.values.values().all(|v| v.abs() >= m.threshold));
        // Dropping the smallest kept magnitude breaks exactness.
        let next = m
            .kept_coefficients
            .values
            .values()
            .map(|v| v.abs())
            .filter(|&v| v > m.threshold)
            .fold(f64::INFINITY, f64::min);
        if next.is_finite() {
            let lossy = build_model(&series(x.clone()), &fixed(next)).unwrap();
            assert!(lossy.diagnostics.training_rmse > 0.0);
        }
    }

    #[test]
    fn empty_map_reconstructs_zero() {
        let mut m = build_model(&series(random_binary(3, 64, 0.5)), &fixed(0.0)).unwrap();
        m.kept_coefficients.values.clear();
        assert_eq!(m.reconstruct().unwrap(), vec![0; 64]);
    }

    #[test]
    fn unknown_wavelet_is_config_error() {
        let mut m = build_model(&series(vec![0, 1, 0, 1]), &fixed(0.0)).unwrap();
        m.wavelet_name = "nope".into();
        assert!(matches!(m.reconstruct(), Err(Error::Config(_))));
        assert!(matches!(m.forecast(0), Err(Error::Config(_))));
    }

    #[test]
    fn forecast_index_examples() {
        let m = build_model(&series(random_binary(4, 100, 0.5)), &fixed(0.0)).unwrap();
        let t0 = m.time_reference_posix_s;
        assert_eq!(m.forecast_index(t0), 0);
        assert_eq!(m.forecast_index(t0 + 100 * 30), 0);
        assert_eq!(m.forecast_index(t0 + 45), 2);
        assert_eq!(m.forecast_index(t0 + 30), 1);
        assert_eq!(m.forecast_index(t0 - 30), 99);
    }

    #[test]
    fn forecast_window_matches_scalar_forecast() {
        let x = random_binary(5, 200, 0.4);
        let m = build_model(&series(x.clone()), &fixed(0.0)).unwrap();
        let t0 = m.time_reference_posix_s;
        let full = m.forecast_window(t0, t0 + 200 * 30).unwrap();
        assert_eq!(full.values, x);
        let single = m.forecast_window(t0 + 90, t0 + 90).unwrap();
        assert_eq!(single.len(), 1);
        let start = t0 + 1234 * 30;
        let win = m.forecast_window(start, start + 500 * 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let j = rng.gen_range(0..win.len());
            assert_eq!(win.values[j], m.forecast(start + 30 * j as i64).unwrap().value);
        }
        assert!(m.forecast_window(10, 5).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = build_model(&series(random_binary(7, 333, 0.2)), &ModelParams::default()).unwrap();
        let text = m.to_json().unwrap();
        let back = WaveletModel::from_json(&text).unwrap();
        assert_eq!(back, m);
        for (a, b) in m.kept_coefficients.values.values().zip(back.kept_coefficients.values.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.to_json().unwrap(), text);
        assert!(text.contains("\"format_version\": 1"));
    }

    #[test]
    fn load_rejects_corrupt_models() {
        let m = build_model(&series(random_binary(8, 64, 0.2)), &fixed(0.0)).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&m.to_json().unwrap()).unwrap();
        v["format_version"] = 99.into();
        assert!(WaveletModel::from_json(&v.to_string()).is_err());
        let mut v: serde_json::Value = serde_json::from_str(&m.to_json().unwrap()).unwrap();
        v["kept_coefficients"][0][1] = 1000.into();
        assert!(WaveletModel::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn non_dyadic_period() {
        let x = random_binary(9, 101, 0.3);
        let m = build_model(&series(x.clone()), &fixed(0.0)).unwrap();
        assert_eq!(m.padded_length, 102);
        assert_eq!(m.reconstruct().unwrap(), x);
    }

    #[test]
    fn shared_threshold_is_lossless_for_all() {
        let set: Vec<_> = (0..3).map(|s| series(random_binary(20 + s, 256, 0.2))).collect();
        let tau = shared_lossless_threshold(&set, &ModelParams::default()).unwrap();
        for s in &set {
            let m = build_model(s, &fixed(tau)).unwrap();
            assert_eq!(m.diagnostics.training_rmse, 0.0);
        }
    }

    #[test]
    fn concurrent_forecasts_share_one_reconstruction() {
        let x = random_binary(10, 128, 0.5);
        let m = build_model(&series(x.clone()), &fixed(0.0)).unwrap();
        std::thread::scope(|s| {
            for i in 0..4 {
                let m = &m;
                let x = &x;
                s.spawn(move || {
                    let t = m.time_reference_posix_s + 30 * i;
                    assert_eq!(m.forecast(t).unwrap().value, x[i as usize]);
                });
            }
        });
    }

    proptest! {
        #[test]
        fn forecast_is_periodic(seed in any::<u64>(), offset in 0i64..10_000_000, k in 0i64..20) {
            let m = build_model(&series(random_binary(seed, 64, 0.3)), &fixed(0.2)).unwrap();
            let t = m.time_reference_posix_s + offset;
            let period = 64 * 30;
            prop_assert_eq!(m.forecast(t).unwrap(), m.forecast(t + k * period).unwrap());
            prop_assert!(m.forecast(t).unwrap().value <= 1);
        }

        #[test]
        fn kept_count_non_increasing_in_tau(seed in any::<u64>(), a in 0.0f64..1.5, b in 0.0f64..1.5) {
            let s = series(random_binary(seed, 256, 0.3));
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let m_lo = build_model(&s, &fixed(lo)).unwrap();
            let m_hi = build_model(&s, &fixed(hi)).unwrap();
            prop_assert!(m_hi.diagnostics.kept_count <= m_lo.diagnostics.kept_count);
        }
    }
}
