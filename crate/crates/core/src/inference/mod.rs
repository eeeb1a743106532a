//! Anomaly detection.
//!
//! The main detector grounds a small hybrid Markov logic network at every
//! timestep. Continuous evidence (current and expected normalized entropy,
//! door-open durations, motion, clock) is observed, so each rule's antecedent
//! is a crisp truth value; the only unknowns are the three query predicates
//! `IsStatisticalAnomaly`, `IsActionAnomaly` and `IsAnomaly`. With three
//! boolean unknowns the network has eight possible worlds and the marginal
//! `P(IsAnomaly)` is computed exactly by enumeration.
//!
//! Two statistical baselines ([`detect_gaussian1d`], [`detect_lof`]) and the
//! detector-agreement tools live alongside.

mod agreement;
mod baselines;
mod evidence;
mod network;
mod rules;
mod run;

pub use agreement::{agreement_matrix, rank_f1_without_ground_truth, AgreementMatrix, DetectorScore};
pub use baselines::{
    detect_gaussian1d, detect_lof, GaussianDetector, LofEmbedding, LofModel, DEFAULT_LOF_K,
    DEFAULT_LOF_THRESHOLD, DEFAULT_Z_THRESHOLD,
};
pub use evidence::{evidence_stream, EvidenceFrame};
pub use network::{
    detect_hmln, ground_network, infer, AnomalyVerdict, ClauseGrounding, Evidence, Formula, GroundedNetwork,
    QueryNode, World,
};
pub use rules::{ClauseId, RestInterval, RuleConfig};
pub use run::{read_detection_csv, write_detection_csv, DetectionRun};
