//! Discrete wavelet transform over finite signals.
//!
//! The transform is the classic two-channel filter bank: each level filters
//! the current averaging signal with a low-pass and a high-pass filter and
//! keeps every second output sample. Boundaries are periodized (circular
//! convolution), so a length-`N` input always yields exactly `N`
//! coefficients and the inverse is exact for any even length.

mod scalogram;
mod select;
#[allow(clippy::approx_constant)]
mod taps;

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

pub use scalogram::{scalogram_export, write_scalogram_csv, Scalogram, ScalogramRow};
pub use select::{binarize, rmse, select_mother_wavelet, CandidateReport, WaveletSelection};

/// Filter taps of one wavelet.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSpec {
    pub family_name: String,
    pub decomposition_lowpass: Vec<f64>,
    pub decomposition_highpass: Vec<f64>,
    pub reconstruction_lowpass: Vec<f64>,
    pub reconstruction_highpass: Vec<f64>,
    pub filter_length: usize,
    pub orthogonal: bool,
}

impl WaveletSpec {
    /// Looks up a catalogued wavelet by name (`haar`, `db2`, `bior3.1`, ...).
    pub fn from_name(name: &str) -> Result<Self> {
        taps::TABLES
            .iter()
            .find(|t| t.name.eq_ignore_ascii_case(name))
            .map(Self::from_table)
            .ok_or_else(|| Error::Config(format!("unknown wavelet '{name}'")))
    }

    /// Every catalogued wavelet, in catalog order.
    pub fn catalog() -> Vec<Self> {
        taps::TABLES.iter().map(Self::from_table).collect()
    }

    /// Catalogued wavelets whose name starts with `prefix` (e.g. `"rbio"`).
    pub fn family(prefix: &str) -> Vec<Self> {
        taps::TABLES
            .iter()
            .filter(|t| t.name.starts_with(prefix))
            .map(Self::from_table)
            .collect()
    }

    pub fn catalog_names() -> impl Iterator<Item = &'static str> {
        taps::TABLES.iter().map(|t| t.name)
    }

    fn from_table(t: &taps::TapTable) -> Self {
        let filter_length = [t.dec_lo, t.dec_hi, t.rec_lo, t.rec_hi]
            .iter()
            .map(|v| v.len())
            .max()
            .unwrap_or(0);
        Self {
            family_name: t.name.to_string(),
            decomposition_lowpass: t.dec_lo.to_vec(),
            decomposition_highpass: t.dec_hi.to_vec(),
            reconstruction_lowpass: t.rec_lo.to_vec(),
            reconstruction_highpass: t.rec_hi.to_vec(),
            filter_length,
            orthogonal: t.orthogonal,
        }
    }

    /// Tap lists zero-padded to `filter_length`, in the order
    /// (dec_lo, dec_hi, rec_lo, rec_hi).
    fn padded_taps(&self) -> [Vec<f64>; 4] {
        let pad = |v: &[f64]| {
            let mut out = v.to_vec();
            out.resize(self.filter_length, 0.0);
            out
        };
        [
            pad(&self.decomposition_lowpass),
            pad(&self.decomposition_highpass),
            pad(&self.reconstruction_lowpass),
            pad(&self.reconstruction_highpass),
        ]
    }
}

/// Which sub-band a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Band {
    /// The coarsest low-pass coefficients `c_{Q,k}`.
    Averaging,
    /// Detail coefficients `d_{j,k}` of level `j` (1 = finest).
    Detail(u32),
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Band::Averaging => f.write_str("averaging"),
            Band::Detail(j) => write!(f, "{j}"),
        }
    }
}

// Serialized as the string "averaging" or the detail level as an integer.
impl Serialize for Band {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Band::Averaging => s.serialize_str("averaging"),
            Band::Detail(j) => s.serialize_u32(*j),
        }
    }
}

impl<'de> Deserialize<'de> for Band {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct BandVisitor;
        impl Visitor<'_> for BandVisitor {
            type Value = Band;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"averaging\" or a positive detail level")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Band, E> {
                if v == "averaging" {
                    Ok(Band::Averaging)
                } else {
                    v.parse::<u32>()
                        .map_err(|_| E::custom(format!("bad band '{v}'")))
                        .and_then(|j| self.visit_u64(u64::from(j)))
                }
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Band, E> {
                match u32::try_from(v) {
                    Ok(j) if j >= 1 => Ok(Band::Detail(j)),
                    _ => Err(E::custom(format!("bad detail level {v}"))),
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Band, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom(format!("bad detail level {v}")))
                    .and_then(|v| self.visit_u64(v))
            }
        }
        d.deserialize_any(BandVisitor)
    }
}

/// Output of a `Q`-level decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    /// `c_{Q,k}`, length `padded_length / 2^Q`.
    pub averaging: Vec<f64>,
    /// `details[j - 1]` holds `d_{j,k}`, length `padded_length / 2^j`.
    pub details: Vec<Vec<f64>>,
    pub level_count: usize,
    /// Length of the signal before any zero padding.
    pub original_length: usize,
    /// Transformed length; equals `original_length` unless the input was padded.
    pub padded_length: usize,
}

impl CoefficientSet {
    /// All-zero coefficients with the layout of a `levels`-deep transform of
    /// a `padded_length` signal.
    pub fn zeros(levels: usize, original_length: usize, padded_length: usize) -> Result<Self> {
        check_layout(levels, padded_length)?;
        if original_length > padded_length {
            return invalid("original length exceeds padded length");
        }
        Ok(Self {
            averaging: vec![0.0; padded_length >> levels],
            details: (1..=levels).map(|j| vec![0.0; padded_length >> j]).collect(),
            level_count: levels,
            original_length,
            padded_length,
        })
    }

    pub fn total_len(&self) -> usize {
        self.averaging.len() + self.details.iter().map(Vec::len).sum::<usize>()
    }

    pub fn band(&self, band: Band) -> Option<&[f64]> {
        match band {
            Band::Averaging => Some(&self.averaging),
            Band::Detail(j) => self.details.get((j as usize).checked_sub(1)?).map(Vec::as_slice),
        }
    }

    pub fn band_mut(&mut self, band: Band) -> Option<&mut Vec<f64>> {
        match band {
            Band::Averaging => Some(&mut self.averaging),
            Band::Detail(j) => self.details.get_mut((j as usize).checked_sub(1)?),
        }
    }

    /// Iterates `(band, shift, value)` over every coefficient: averaging first,
    /// then details from the coarsest level to the finest.
    pub fn iter(&self) -> impl Iterator<Item = (Band, usize, f64)> + '_ {
        let averaging = self
            .averaging
            .iter()
            .enumerate()
            .map(|(k, &v)| (Band::Averaging, k, v));
        let details = self.details.iter().enumerate().rev().flat_map(|(i, d)| {
            d.iter()
                .enumerate()
                .map(move |(k, &v)| (Band::Detail(i as u32 + 1), k, v))
        });
        averaging.chain(details)
    }

    /// Copy with every coefficient of magnitude below `tau` set to zero.
    pub fn zero_below(&self, tau: f64) -> Self {
        let mut out = self.clone();
        let clear = |v: &mut Vec<f64>| {
            v.iter_mut().filter(|c| c.abs() < tau).for_each(|c| *c = 0.0)
        };
        clear(&mut out.averaging);
        out.details.iter_mut().for_each(clear);
        out
    }

    fn validate(&self) -> Result<()> {
        check_layout(self.level_count, self.padded_length)?;
        if self.original_length > self.padded_length {
            return invalid("original length exceeds padded length");
        }
        if self.details.len() != self.level_count {
            return invalid(format!(
                "expected {} detail levels, found {}",
                self.level_count,
                self.details.len()
            ));
        }
        if self.averaging.len() != self.padded_length >> self.level_count {
            return invalid(format!(
                "averaging band has length {}, expected {}",
                self.averaging.len(),
                self.padded_length >> self.level_count
            ));
        }
        for (i, d) in self.details.iter().enumerate() {
            let expected = self.padded_length >> (i + 1);
            if d.len() != expected {
                return invalid(format!(
                    "detail level {} has length {}, expected {expected}",
                    i + 1,
                    d.len()
                ));
            }
        }
        Ok(())
    }
}

fn check_layout(levels: usize, len: usize) -> Result<()> {
    if levels == 0 {
        return invalid("decomposition level must be at least 1");
    }
    if levels >= usize::BITS as usize || len == 0 || len % (1usize << levels) != 0 {
        return invalid(format!(
            "signal length {len} is not divisible by 2^{levels}"
        ));
    }
    Ok(())
}

/// Deepest useful decomposition: `floor(log2(N / (L - 1) + 1))`.
///
/// Evaluated in integers as the largest `Q` with `(2^Q - 1)(L - 1) <= N`.
pub fn max_decomposition_level(signal_len: usize, filter_len: usize) -> usize {
    assert!(signal_len >= 2 && filter_len >= 2, "need N >= 2 and L >= 2");
    let taps = (filter_len - 1) as u128;
    let n = signal_len as u128;
    let mut q = 0;
    while q < 127 && ((1u128 << (q + 1)) - 1) * taps <= n {
        q += 1;
    }
    q
}

/// `Q`-level periodized DWT. The length must be divisible by `2^Q`.
pub fn dwt(signal: &[f64], wavelet: &WaveletSpec, levels: usize) -> Result<CoefficientSet> {
    check_layout(levels, signal.len())?;
    let max = max_decomposition_level(signal.len().max(2), wavelet.filter_length.max(2));
    if levels > max {
        return invalid(format!(
            "level {levels} exceeds the maximum {max} for N = {} and L = {}",
            signal.len(),
            wavelet.filter_length
        ));
    }
    let [lo, hi, _, _] = wavelet.padded_taps();
    let mut details = Vec::with_capacity(levels);
    let mut current = signal.to_vec();
    for _ in 0..levels {
        let (a, d) = analysis_step(&current, &lo, &hi);
        details.push(d);
        current = a;
    }
    Ok(CoefficientSet {
        averaging: current,
        details,
        level_count: levels,
        original_length: signal.len(),
        padded_length: signal.len(),
    })
}

/// Like [`dwt`], but zero-pads the signal up to the next multiple of `2^Q`.
/// The pad is recorded so [`idwt`] returns the original length.
pub fn dwt_padded(signal: &[f64], wavelet: &WaveletSpec, levels: usize) -> Result<CoefficientSet> {
    if levels == 0 || levels >= usize::BITS as usize {
        return invalid("decomposition level must be at least 1");
    }
    if signal.is_empty() {
        return invalid("cannot transform an empty signal");
    }
    let block = 1usize << levels;
    let padded_len = signal.len().div_ceil(block) * block;
    let mut padded = signal.to_vec();
    padded.resize(padded_len, 0.0);
    let mut coeffs = dwt(&padded, wavelet, levels)?;
    coeffs.original_length = signal.len();
    Ok(coeffs)
}

/// Inverse of [`dwt`] / [`dwt_padded`].
pub fn idwt(coeffs: &CoefficientSet, wavelet: &WaveletSpec) -> Result<Vec<f64>> {
    coeffs.validate()?;
    let [_, _, lo, hi] = wavelet.padded_taps();
    let mut current = coeffs.averaging.clone();
    for d in coeffs.details.iter().rev() {
        current = synthesis_step(&current, d, &lo, &hi);
    }
    current.truncate(coeffs.original_length);
    Ok(current)
}

// a[k] = sum_i lo[i] x[(2k + 1 - i) mod n]
fn analysis_step(x: &[f64], lo: &[f64], hi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let half = n / 2;
    let wrap = n * (lo.len() / n + 1);
    let mut a = vec![0.0; half];
    let mut d = vec![0.0; half];
    for k in 0..half {
        let base = 2 * k + 1 + wrap;
        let (mut sa, mut sd) = (0.0, 0.0);
        for (i, (&l, &h)) in lo.iter().zip(hi).enumerate() {
            let v = x[(base - i) % n];
            sa += l * v;
            sd += h * v;
        }
        a[k] = sa;
        d[k] = sd;
    }
    (a, d)
}

// Upsample, filter, and undo the L - 1 sample delay of the analysis/synthesis pair.
fn synthesis_step(a: &[f64], d: &[f64], lo: &[f64], hi: &[f64]) -> Vec<f64> {
    let n = 2 * a.len();
    let taps = lo.len();
    let wrap = n * (taps / n + 1);
    let mut y = vec![0.0; n];
    for k in 0..a.len() {
        let base = 2 * k + 2 + wrap - taps;
        for (i, (&l, &h)) in lo.iter().zip(hi).enumerate() {
            y[(base + i) % n] += l * a[k] + h * d[k];
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn haar() -> WaveletSpec {
        WaveletSpec::from_name("haar").unwrap()
    }

    #[test]
    fn haar_pair() {
        let c = dwt(&[4.0, 2.0], &haar(), 1).unwrap();
        assert!((c.averaging[0] - 3.0 * SQRT2).abs() < 1e-12);
        assert!((c.details[0][0] - SQRT2).abs() < 1e-12);
        let back = idwt(&c, &haar()).unwrap();
        assert!((back[0] - 4.0).abs() < 1e-12 && (back[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constant_signal_has_no_detail() {
        let c = dwt(&[1.5; 8], &haar(), 3).unwrap();
        assert!(c.details.iter().flatten().all(|d| d.abs() < 1e-12));
        assert!((c.averaging[0] - 1.5 * 2f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(c.total_len(), 8);
    }

    #[test]
    fn idwt_of_handbuilt_set() {
        let c = CoefficientSet {
            averaging: vec![3.0 * SQRT2],
            details: vec![vec![SQRT2]],
            level_count: 1,
            original_length: 2,
            padded_length: 2,
        };
        let x = idwt(&c, &haar()).unwrap();
        assert!((x[0] - 4.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn binary_round_trip_haar() {
        let x = [1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0];
        let back = idwt(&dwt(&x, &haar(), 1).unwrap(), &haar()).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rbio31_binary_round_trips() {
        let w = WaveletSpec::from_name("rbio3.1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let x: Vec<f64> = (0..64).map(|_| f64::from(rng.gen_range(0u8..2))).collect();
            let back = idwt(&dwt(&x, &w, 1).unwrap(), &w).unwrap();
            let err = x.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-8, "error {err}");
        }
    }

    #[test]
    fn max_level_examples() {
        assert_eq!(max_decomposition_level(8, 2), 3);
        assert_eq!(max_decomposition_level(4, 2), 2);
        assert_eq!(max_decomposition_level(2, 2), 1);
        assert_eq!(max_decomposition_level(16384, 2), 14);
        // log2(16/17 + 1) < 1
        assert_eq!(max_decomposition_level(16, 18), 0);
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(dwt(&[1.0, 2.0, 3.0], &haar(), 1).is_err());
        assert!(dwt(&[1.0; 8], &haar(), 4).is_err());
        assert!(dwt(&[1.0; 8], &haar(), 0).is_err());
        let mut c = dwt(&[1.0; 8], &haar(), 2).unwrap();
        c.details.pop();
        assert!(idwt(&c, &haar()).is_err());
    }

    #[test]
    fn padded_transform_trims_on_inverse() {
        let w = WaveletSpec::from_name("db2").unwrap();
        let x: Vec<f64> = (0..13).map(|i| (i % 3) as f64).collect();
        let c = dwt_padded(&x, &w, 2).unwrap();
        assert_eq!(c.padded_length, 16);
        assert_eq!(c.original_length, 13);
        let back = idwt(&c, &w).unwrap();
        assert_eq!(back.len(), 13);
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn orthogonal_highpass_is_quadrature_mirror() {
        for w in WaveletSpec::catalog().into_iter().filter(|w| w.orthogonal) {
            let lo = &w.decomposition_lowpass;
            let hi = &w.decomposition_highpass;
            let l = lo.len();
            for n in 0..l {
                let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
                assert!(
                    (hi[n] - sign * lo[l - 1 - n]).abs() < 1e-12,
                    "{} tap {n}",
                    w.family_name
                );
            }
        }
    }

    #[test]
    fn catalog_contents() {
        let names: Vec<_> = WaveletSpec::catalog_names().collect();
        assert_eq!(names.len(), 20);
        for n in ["haar", "db2", "db3", "db4", "bior1.1", "bior3.1", "rbio1.1", "rbio3.1"] {
            assert!(names.contains(&n), "{n}");
        }
        for w in WaveletSpec::catalog() {
            let longest = [
                &w.decomposition_lowpass,
                &w.decomposition_highpass,
                &w.reconstruction_lowpass,
                &w.reconstruction_highpass,
            ]
            .iter()
            .map(|v| v.len())
            .max()
            .unwrap();
            assert_eq!(w.filter_length, longest);
        }
        assert!(WaveletSpec::from_name("coif1").is_err());
    }

    #[test]
    fn band_serde() {
        let v = serde_json::to_string(&[Band::Averaging, Band::Detail(2)]).unwrap();
        assert_eq!(v, r#"["averaging",2]"#);
        let back: Vec<Band> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![Band::Averaging, Band::Detail(2)]);
        assert!(serde_json::from_str::<Band>("0").is_err());
    }

    proptest! {
        #[test]
        fn linearity(
            seed in any::<u64>(),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            widx in 0usize..20,
            k in 3u32..9,
        ) {
            let w = &WaveletSpec::catalog()[widx];
            let n = 1usize << k;
            let q = max_decomposition_level(n, w.filter_length).min(3);
            prop_assume!(q >= 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mix: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
            let cx = dwt(&x, w, q).unwrap();
            let cy = dwt(&y, w, q).unwrap();
            let cm = dwt(&mix, w, q).unwrap();
            for ((p, u), v) in cm.iter().zip(cx.iter()).zip(cy.iter()) {
                prop_assert!((p.2 - (a * u.2 + b * v.2)).abs() < 1e-9);
            }
        }

        #[test]
        fn max_level_monotone(n in 2usize..100_000, l in 2usize..40) {
            prop_assert!(max_decomposition_level(n + 1, l) >= max_decomposition_level(n, l));
            prop_assert!(max_decomposition_level(n, l + 1) <= max_decomposition_level(n, l));
        }
    }
}
