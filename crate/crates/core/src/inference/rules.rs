use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weighted clauses of the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseId {
    /// `H(t) >= H* => IsStatisticalAnomaly(t)`
    EntropyAboveThreshold,
    /// `H(t) > H_W(t) => IsStatisticalAnomaly(t)`
    EntropyAboveExpected,
    /// `TimeActive(t, Door) > door_open_max => IsActionAnomaly(t)`
    DoorLeftOpen,
    /// `IsActive(t, Motion) and t in T_rest => IsActionAnomaly(t)`
    MotionDuringRest,
    /// `IsStatisticalAnomaly(t) or IsActionAnomaly(t) => IsAnomaly(t)`
    Combine,
    /// `not IsAnomaly(t)`
    Prior,
}

impl ClauseId {
    pub const WEIGHTED: [ClauseId; 5] = [
        ClauseId::EntropyAboveThreshold,
        ClauseId::EntropyAboveExpected,
        ClauseId::DoorLeftOpen,
        ClauseId::MotionDuringRest,
        ClauseId::Combine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClauseId::EntropyAboveThreshold => "entropy_above_threshold",
            ClauseId::EntropyAboveExpected => "entropy_above_expected",
            ClauseId::DoorLeftOpen => "door_left_open",
            ClauseId::MotionDuringRest => "motion_during_rest",
            ClauseId::Combine => "combine",
            ClauseId::Prior => "prior",
        }
    }

    pub fn is_expert_rule(self) -> bool {
        matches!(self, ClauseId::DoorLeftOpen | ClauseId::MotionDuringRest)
    }
}

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClauseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClauseId::WEIGHTED
            .into_iter()
            .chain([ClauseId::Prior])
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown clause '{s}'")))
    }
}

impl Serialize for ClauseId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClauseId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Daily clock interval `[start, end)` in minutes after local midnight;
/// wraps midnight when `start > end`. Written as `"HH:MM-HH:MM"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestInterval {
    pub start_min: u32,
    pub end_min: u32,
}

impl RestInterval {
    pub fn contains_minute(&self, minute_of_day: u32) -> bool {
        if self.start_min <= self.end_min {
            (self.start_min..self.end_min).contains(&minute_of_day)
        } else {
            minute_of_day >= self.start_min || minute_of_day < self.end_min
        }
    }

    pub fn contains(&self, t_posix_s: i64, utc_offset_s: i64) -> bool {
        let second_of_day = (t_posix_s + utc_offset_s).rem_euclid(86_400);
        self.contains_minute((second_of_day / 60) as u32)
    }
}

impl FromStr for RestInterval {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("rest interval '{s}' is not HH:MM-HH:MM"));
        let parse_hm = |hm: &str| -> Result<u32> {
            let (h, m) = hm.trim().split_once(':').ok_or_else(bad)?;
            let (h, m): (u32, u32) = (h.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?);
            if h > 23 || m > 59 {
                return Err(bad());
            }
            Ok(h * 60 + m)
        };
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        let interval = Self {
            start_min: parse_hm(a)?,
            end_min: parse_hm(b)?,
        };
        if interval.start_min == interval.end_min {
            return Err(Error::Config(format!("rest interval '{s}' is empty")));
        }
        Ok(interval)
    }
}

impl fmt::Display for RestInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:02}:{:02}-{:02}:{:02}",
            self.start_min / 60,
            self.start_min % 60,
            self.end_min / 60,
            self.end_min % 60
        )
    }
}

impl Serialize for RestInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RestInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Thresholds, sensor roles and weights of the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleConfig {
    /// `H*`, as a fraction of the maximum normalized entropy.
    pub entropy_threshold: f64,
    /// Minimum door-open time, in seconds, that counts as left open.
    pub door_open_max_s: f64,
    pub rest_interval: RestInterval,
    /// Offset of the local clock from UTC, in seconds.
    pub utc_offset_s: i64,
    pub door_sensors: Vec<String>,
    pub motion_sensors: Vec<String>,
    /// Missing weights default to 10.
    pub clause_weights: BTreeMap<ClauseId, f64>,
    pub prior_weight: f64,
    /// Clauses left out of the grounding.
    pub disabled_clauses: Vec<ClauseId>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        Self {
            entropy_threshold: 0.9,
            door_open_max_s: 300.0,
            rest_interval: RestInterval {
                start_min: 23 * 60,
                end_min: 7 * 60,
            },
            utc_offset_s: 0,
            door_sensors: Vec::new(),
            motion_sensors: Vec::new(),
            clause_weights: ClauseId::WEIGHTED.into_iter().map(|c| (c, 10.0)).collect(),
            prior_weight: 2.0,
            disabled_clauses: Vec::new(),
        }
    }
}

impl RuleConfig {
    pub fn weight(&self, clause: ClauseId) -> f64 {
        match clause {
            ClauseId::Prior => self.prior_weight,
            c => self.clause_weights.get(&c).copied().unwrap_or(10.0),
        }
    }

    /// Sets every clause weight (not the prior) to `w`.
    pub fn with_uniform_weight(mut self, w: f64) -> Self {
        self.clause_weights = ClauseId::WEIGHTED.into_iter().map(|c| (c, w)).collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |msg: String| Err(Error::Config(msg));
        if !(0.0..=1.0).contains(&self.entropy_threshold) {
            return cfg(format!("entropy threshold {} outside [0, 1]", self.entropy_threshold));
        }
        if !(self.door_open_max_s > 0.0) {
            return cfg("door_open_max_s must be positive".into());
        }
        if let Some((c, w)) = self.clause_weights.iter().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
            return cfg(format!("weight of {c} must be positive, got {w}"));
        }
        if self.clause_weights.contains_key(&ClauseId::Prior) {
            return cfg("set the prior through prior_weight".into());
        }
        if !(self.prior_weight >= 0.0 && self.prior_weight.is_finite()) {
            return cfg(format!("prior weight must be non-negative, got {}", self.prior_weight));
        }
        if self.disabled_clauses.contains(&ClauseId::Prior) {
            return cfg("the prior clause cannot be disabled".into());
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read rules {}: {e}", path.display())))?;
        let rules: Self = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        rules.validate()?;
        Ok(rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_interval_wraps_midnight() {
        let r: RestInterval = "23:00-07:00".parse().unwrap();
        assert!(r.contains_minute(2 * 60));
        assert!(r.contains_minute(23 * 60));
        assert!(!r.contains_minute(7 * 60));
        assert!(!r.contains_minute(12 * 60));
        let day: RestInterval = "13:00-14:30".parse().unwrap();
        assert!(day.contains_minute(14 * 60) && !day.contains_minute(15 * 60));
        assert_eq!(r.to_string(), "23:00-07:00");
        assert!("25:00-07:00".parse::<RestInterval>().is_err());
        assert!("07:00-07:00".parse::<RestInterval>().is_err());
        assert!("0700".parse::<RestInterval>().is_err());
    }

    #[test]
    fn config_json() {
        let text = r#"{"entropy_threshold": 0.8, "rest_interval": "22:00-06:30",
                       "door_sensors": ["front_door"], "clause_weights": {"combine": 5.0}}"#;
        let r: RuleConfig = serde_json::from_str(text).unwrap();
        r.validate().unwrap();
        assert_eq!(r.weight(ClauseId::Combine), 5.0);
        assert_eq!(r.weight(ClauseId::DoorLeftOpen), 10.0);
        assert_eq!(r.rest_interval.start_min, 22 * 60);
        let back: RuleConfig = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RuleConfig>(r#"{"bogus": 1}"#).is_err());
        let mut bad = RuleConfig::default();
        bad.clause_weights.insert(ClauseId::Combine, -1.0);
        assert!(bad.validate().is_err());
        bad = RuleConfig { entropy_threshold: 1.5, ..RuleConfig::default() };
        assert!(bad.validate().is_err());
    }
}
