use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AnomalyKind, AnomalyLabel, Corpus, Grid, ReadingType, SensorInfo};
use crate::error::{invalid, Result};
use crate::series::SensorSeries;

const DAY_S: u32 = 86_400;

/// Daily activation `[start, end)`, in seconds after local midnight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DailyInterval {
    pub start_s: u32,
    pub end_s: u32,
}

impl DailyInterval {
    pub fn hm(start_h: u32, start_m: u32, end_h: u32, end_m: u32) -> Self {
        Self {
            start_s: start_h * 3600 + start_m * 60,
            end_s: end_h * 3600 + end_m * 60,
        }
    }
}

/// A short daily activation lasting `samples` grid cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spike {
    pub at_s: u32,
    pub samples: u32,
}

impl Spike {
    pub fn hm(h: u32, m: u32, samples: u32) -> Self {
        Self {
            at_s: h * 3600 + m * 60,
            samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSensor {
    pub sensor_id: String,
    pub location: String,
    pub reading_type: ReadingType,
    pub routines: Vec<DailyInterval>,
    #[serde(default)]
    pub spikes: Vec<Spike>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalySpec {
    pub kind: AnomalyKind,
    pub day: u32,
    pub start_s: u32,
    pub duration_s: u32,
    pub sensor_ids: Vec<String>,
}

/// Recipe for a synthetic home.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub name: String,
    /// Local midnight of day 0.
    pub start_posix_s: i64,
    pub days: u32,
    pub sampling_period_s: u32,
    pub sensors: Vec<SyntheticSensor>,
    /// Per-sample probability of a spurious activation.
    pub noise_rate: f64,
    #[serde(default)]
    pub anomalies: Vec<AnomalySpec>,
    pub seed: u64,
}

impl SyntheticSpec {
    /// A six-sensor home with daily routines and short appliance spikes,
    /// five weeks long, with one anomaly of each kind in the fifth week.
    pub fn default_home(seed: u64) -> Self {
        let motion = |id: &str, loc: &str, routines, spikes| SyntheticSensor {
            sensor_id: id.into(),
            location: loc.into(),
            reading_type: ReadingType::Motion,
            routines,
            spikes,
        };
        let contact = |id: &str, loc: &str, routines, spikes| SyntheticSensor {
            sensor_id: id.into(),
            location: loc.into(),
            reading_type: ReadingType::Contact,
            routines,
            spikes,
        };
        let sensors = vec![
            motion(
                "entrance_motion",
                "Entrance",
                vec![DailyInterval::hm(7, 30, 8, 0), DailyInterval::hm(18, 0, 18, 20)],
                vec![Spike::hm(12, 7, 1), Spike::hm(21, 13, 2)],
            ),
            motion(
                "kitchen_motion",
                "Kitchen",
                vec![
                    DailyInterval::hm(7, 0, 7, 45),
                    DailyInterval::hm(12, 0, 12, 40),
                    DailyInterval::hm(19, 0, 20, 0),
                ],
                vec![Spike::hm(15, 31, 1), Spike::hm(10, 2, 2)],
            ),
            motion(
                "lounge_motion",
                "Lounge",
                vec![DailyInterval::hm(20, 0, 22, 30)],
                vec![Spike::hm(10, 17, 2), Spike::hm(16, 5, 1)],
            ),
            motion(
                "bedroom_motion",
                "Bedroom",
                vec![DailyInterval::hm(22, 30, 22, 50), DailyInterval::hm(7, 5, 7, 20)],
                vec![Spike::hm(13, 33, 1)],
            ),
            contact(
                "front_door",
                "Entrance",
                vec![DailyInterval::hm(8, 0, 8, 2), DailyInterval::hm(17, 58, 18, 0)],
                vec![Spike::hm(13, 41, 1)],
            ),
            contact(
                "fridge",
                "Fridge",
                vec![],
                vec![
                    Spike::hm(7, 10, 1),
                    Spike::hm(12, 15, 1),
                    Spike::hm(16, 44, 1),
                    Spike::hm(19, 20, 2),
                ],
            ),
        ];
        let anomalies = vec![
            AnomalySpec {
                kind: AnomalyKind::NighttimeMotion,
                day: 30,
                start_s: 2 * 3600,
                duration_s: 300,
                sensor_ids: vec!["lounge_motion".into()],
            },
            AnomalySpec {
                kind: AnomalyKind::DoorLeftOpen,
                day: 31,
                start_s: 14 * 3600,
                duration_s: 900,
                sensor_ids: vec!["front_door".into()],
            },
            AnomalySpec {
                kind: AnomalyKind::OffSchedule,
                day: 32,
                start_s: 15 * 3600,
                duration_s: 600,
                sensor_ids: vec![
                    "entrance_motion".into(),
                    "kitchen_motion".into(),
                    "lounge_motion".into(),
                ],
            },
        ];
        Self {
            name: "synthetic-home".into(),
            start_posix_s: 1_510_012_800,
            days: 35,
            sampling_period_s: 30,
            sensors,
            noise_rate: 0.0005,
            anomalies,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sampling_period_s == 0 || DAY_S % self.sampling_period_s != 0 {
            return invalid("sampling period must divide one day");
        }
        if self.days == 0 {
            return invalid("need at least one day");
        }
        if !(0.0..=1.0).contains(&self.noise_rate) {
            return invalid(format!("noise rate {} outside [0, 1]", self.noise_rate));
        }
        for s in &self.sensors {
            if !s.reading_type.is_binary() {
                return invalid(format!("synthetic sensor {} must be binary", s.sensor_id));
            }
            if s.routines.iter().any(|r| r.start_s >= r.end_s || r.end_s > DAY_S) {
                return invalid(format!("sensor {} has a malformed routine", s.sensor_id));
            }
        }
        for a in &self.anomalies {
            if a.day >= self.days {
                return invalid(format!("anomaly on day {} beyond the corpus", a.day));
            }
            if let Some(id) = a.sensor_ids.iter().find(|id| !self.sensors.iter().any(|s| &s.sensor_id == *id)) {
                return invalid(format!("anomaly references unknown sensor {id}"));
            }
        }
        Ok(())
    }
}

/// Generates the labelled corpus for `spec`. Pure in `spec` (including its
/// seed): identical specs give bit-identical corpora.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Corpus> {
    spec.validate()?;
    let period = spec.sampling_period_s;
    let per_day = (DAY_S / period) as usize;
    let length = per_day * spec.days as usize;
    let cell = |s: u32| (s / period) as usize;
    let cell_ceil = |s: u32| s.div_ceil(period) as usize;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut all_values = Vec::with_capacity(spec.sensors.len());
    for sensor in &spec.sensors {
        let mut day = vec![0u8; per_day];
        for r in &sensor.routines {
            day[cell(r.start_s)..cell_ceil(r.end_s)].fill(1);
        }
        for sp in &sensor.spikes {
            let first = cell(sp.at_s);
            for n in first..first + sp.samples as usize {
                day[n % per_day] = 1;
            }
        }
        let mut values: Vec<u8> = day.iter().copied().cycle().take(length).collect();
        if spec.noise_rate > 0.0 {
            for v in &mut values {
                if rng.gen_bool(spec.noise_rate) {
                    *v = 1;
                }
            }
        }
        all_values.push(values);
    }

    let mut labels = Vec::with_capacity(spec.anomalies.len());
    for a in &spec.anomalies {
        let start = a.day as usize * per_day + cell(a.start_s);
        let end = (start + cell_ceil(a.duration_s).max(1)).min(length);
        for id in &a.sensor_ids {
            let idx = spec.sensors.iter().position(|s| &s.sensor_id == id).expect("validated");
            all_values[idx][start..end].fill(1);
        }
        labels.push(AnomalyLabel {
            kind: a.kind,
            start_posix_s: spec.start_posix_s + (start * period as usize) as i64,
            end_posix_s: spec.start_posix_s + (end * period as usize) as i64,
            sensor_ids: a.sensor_ids.clone(),
        });
    }

    let fs = 1.0 / f64::from(period);
    let series = spec
        .sensors
        .iter()
        .zip(all_values)
        .map(|(s, values)| SensorSeries::new(s.sensor_id.clone(), values, fs, spec.start_posix_s, s.location.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus {
        name: spec.name.clone(),
        grid: Grid {
            start_posix_s: spec.start_posix_s,
            period_s: f64::from(period),
            length,
        },
        sensors: spec
            .sensors
            .iter()
            .map(|s| SensorInfo {
                sensor_id: s.sensor_id.clone(),
                location: s.location.clone(),
                reading_type: s.reading_type,
            })
            .collect(),
        series,
        labels,
        excluded_sensors: Vec::new(),
    })
}
