use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evidence::EvidenceFrame;
use super::rules::{ClauseId, RuleConfig};
use super::run::DetectionRun;
use crate::activity::EntropyRow;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryNode {
    IsStatisticalAnomaly,
    IsActionAnomaly,
    IsAnomaly,
}

/// One joint assignment of the three query nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct World {
    pub statistical: bool,
    pub action: bool,
    pub anomaly: bool,
}

impl World {
    /// All eight worlds; bit 0 is `statistical`, bit 1 `action`, bit 2 `anomaly`.
    pub fn all() -> [World; 8] {
        std::array::from_fn(|b| World {
            statistical: b & 1 != 0,
            action: b & 2 != 0,
            anomaly: b & 4 != 0,
        })
    }

    pub fn get(&self, node: QueryNode) -> bool {
        match node {
            QueryNode::IsStatisticalAnomaly => self.statistical,
            QueryNode::IsActionAnomaly => self.action,
            QueryNode::IsAnomaly => self.anomaly,
        }
    }
}

/// Ground formula over the query nodes. Evidence enters only through the
/// already evaluated `antecedent` flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// `antecedent => consequent`
    Implies { antecedent: bool, consequent: QueryNode },
    /// `(a or b) => consequent`
    EitherImplies { a: QueryNode, b: QueryNode, consequent: QueryNode },
    Not(QueryNode),
}

impl Formula {
    pub fn satisfied(&self, w: &World) -> bool {
        match *self {
            Formula::Implies { antecedent, consequent } => !antecedent || w.get(consequent),
            Formula::EitherImplies { a, b, consequent } => !(w.get(a) || w.get(b)) || w.get(consequent),
            Formula::Not(node) => !w.get(node),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClauseGrounding {
    pub clause: ClauseId,
    /// Door or motion sensor for the per-sensor expert rules.
    pub sensor: Option<String>,
    pub formula: Formula,
    pub weight: f64,
}

/// Observed values at one timestep.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub entropy_real: f64,
    pub entropy_expected: Option<f64>,
    pub door_open_s: BTreeMap<String, f64>,
    pub motion_active: BTreeMap<String, bool>,
    pub in_rest_interval: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundedNetwork {
    pub timestamp: i64,
    pub evidence: Evidence,
    pub groundings: Vec<ClauseGrounding>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalyVerdict {
    pub timestamp: i64,
    pub probability: f64,
    pub flagged: bool,
    /// Clauses whose evidence antecedent held, in grounding order, deduplicated.
    pub triggered_clauses: Vec<ClauseId>,
}

/// Grounds every enabled clause at `timestamp`. Expert rules are grounded
/// once per configured door or motion sensor.
pub fn ground_network(
    timestamp: i64,
    evidence: Evidence,
    rules: &RuleConfig,
    include_expert_rules: bool,
) -> Result<GroundedNetwork> {
    if !(0.0..=1.0).contains(&evidence.entropy_real) {
        return invalid(format!("entropy {} outside [0, 1]", evidence.entropy_real));
    }
    let enabled = |c: ClauseId| !rules.disabled_clauses.contains(&c) && (include_expert_rules || !c.is_expert_rule());
    let mut groundings = Vec::new();
    let mut push = |clause: ClauseId, sensor: Option<String>, formula: Formula| {
        groundings.push(ClauseGrounding {
            clause,
            sensor,
            formula,
            weight: rules.weight(clause),
        })
    };
    let implies = |antecedent: bool, consequent| Formula::Implies { antecedent, consequent };

    if enabled(ClauseId::EntropyAboveThreshold) {
        push(
            ClauseId::EntropyAboveThreshold,
            None,
            implies(evidence.entropy_real >= rules.entropy_threshold, QueryNode::IsStatisticalAnomaly),
        );
    }
    if enabled(ClauseId::EntropyAboveExpected) {
        let expected = evidence.entropy_expected.ok_or_else(|| {
            Error::Config(format!("no expected entropy at {timestamp} for rule {}", ClauseId::EntropyAboveExpected))
        })?;
        push(
            ClauseId::EntropyAboveExpected,
            None,
            implies(evidence.entropy_real > expected, QueryNode::IsStatisticalAnomaly),
        );
    }
    if enabled(ClauseId::DoorLeftOpen) {
        for door in &rules.door_sensors {
            let open = *evidence.door_open_s.get(door).ok_or_else(|| {
                Error::Config(format!("no door evidence for '{door}' at {timestamp}"))
            })?;
            push(
                ClauseId::DoorLeftOpen,
                Some(door.clone()),
                implies(open > rules.door_open_max_s, QueryNode::IsActionAnomaly),
            );
        }
    }
    if enabled(ClauseId::MotionDuringRest) {
        for sensor in &rules.motion_sensors {
            let active = *evidence.motion_active.get(sensor).ok_or_else(|| {
                Error::Config(format!("no motion evidence for '{sensor}' at {timestamp}"))
            })?;
            push(
                ClauseId::MotionDuringRest,
                Some(sensor.clone()),
                implies(active && evidence.in_rest_interval, QueryNode::IsActionAnomaly),
            );
        }
    }
    if enabled(ClauseId::Combine) {
        push(
            ClauseId::Combine,
            None,
            Formula::EitherImplies {
                a: QueryNode::IsStatisticalAnomaly,
                b: QueryNode::IsActionAnomaly,
                consequent: QueryNode::IsAnomaly,
            },
        );
    }
    push(ClauseId::Prior, None, Formula::Not(QueryNode::IsAnomaly));
    Ok(GroundedNetwork {
        timestamp,
        evidence,
        groundings,
    })
}

/// Exact marginal of `IsAnomaly` over the eight worlds.
pub fn infer(network: &GroundedNetwork) -> AnomalyVerdict {
    let log_weights: Vec<(bool, f64)> = World::all()
        .iter()
        .map(|w| {
            let s: f64 = network
                .groundings
                .iter()
                .filter(|g| g.formula.satisfied(w))
                .map(|g| g.weight)
                .sum();
            (w.anomaly, s)
        })
        .collect();
    let max = log_weights.iter().map(|&(_, s)| s).fold(f64::NEG_INFINITY, f64::max);
    let (mut num, mut den) = (0.0, 0.0);
    for &(anomaly, s) in &log_weights {
        let e = (s - max).exp();
        den += e;
        if anomaly {
            num += e;
        }
    }
    let probability = (num / den).clamp(0.0, 1.0);
    let mut triggered_clauses: Vec<ClauseId> = Vec::new();
    for g in &network.groundings {
        if let Formula::Implies { antecedent: true, .. } = g.formula {
            if !triggered_clauses.contains(&g.clause) {
                triggered_clauses.push(g.clause);
            }
        }
    }
    AnomalyVerdict {
        timestamp: network.timestamp,
        probability,
        flagged: probability > 0.5,
        triggered_clauses,
    }
}

/// HMLN over aligned entropy rows and sensor evidence frames. Without
/// expert rules (the HMLN* variant) `frames` may be empty.
pub fn detect_hmln(
    rows: &[EntropyRow],
    frames: &[EvidenceFrame],
    rules: &RuleConfig,
    include_expert_rules: bool,
) -> Result<DetectionRun> {
    rules.validate()?;
    let need_frames = include_expert_rules
        && ((!rules.door_sensors.is_empty() && !rules.disabled_clauses.contains(&ClauseId::DoorLeftOpen))
            || (!rules.motion_sensors.is_empty() && !rules.disabled_clauses.contains(&ClauseId::MotionDuringRest)));
    if need_frames || !frames.is_empty() {
        if frames.len() != rows.len() {
            return invalid(format!("{} entropy rows but {} evidence frames", rows.len(), frames.len()));
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i].timestamp != frames[i].timestamp) {
            return invalid(format!("entropy and evidence streams misaligned at index {i}"));
        }
    }
    let verdicts: Vec<AnomalyVerdict> = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            let frame = frames.get(i);
            let evidence = Evidence {
                entropy_real: row.entropy_real,
                entropy_expected: row.entropy_expected,
                door_open_s: frame.map(|f| f.door_open_s.clone()).unwrap_or_default(),
                motion_active: frame.map(|f| f.motion_active.clone()).unwrap_or_default(),
                in_rest_interval: rules.rest_interval.contains(row.timestamp, rules.utc_offset_s),
            };
            ground_network(row.timestamp, evidence, rules, include_expert_rules).map(|n| infer(&n))
        })
        .collect::<Result<_>>()?;
    let name = if include_expert_rules { "hmln" } else { "hmln_star" };
    let mut parameters = BTreeMap::new();
    parameters.insert("rules".to_string(), serde_json::to_string(rules)?);
    DetectionRun::new(
        name,
        verdicts.iter().map(|v| v.timestamp).collect(),
        verdicts.iter().map(|v| v.flagged).collect(),
        verdicts.iter().map(|v| v.probability).collect(),
        verdicts
            .iter()
            .map(|v| v.triggered_clauses.iter().map(|c| c.as_str().to_string()).collect())
            .collect(),
        parameters,
    )
}
