//! Acceptance suite. Each criterion prints one PASS / FAIL / SKIPPED line;
//! the binary exits non-zero if any criterion fails.
//!
//! Criterion 5 needs the public deployment exports. Point
//! `SENSORWAVE_LCAS` and/or `SENSORWAVE_ENRICHME` at the JSON-lines files
//! (with optional `SENSORWAVE_LCAS_MAPPING` / `SENSORWAVE_ENRICHME_MAPPING`
//! field maps); without them it is reported SKIPPED.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sensorwave::activity::{normalized_entropy, ActivityDistribution, EntropyRow};
use sensorwave::inference::{
    detect_gaussian1d, ground_network, infer, ClauseId, Evidence, LofModel, RuleConfig,
};
use sensorwave::ingest::{AnomalyKind, Corpus, FoldPreset};
use sensorwave::model::{build_model, ModelParams, Threshold};
use sensorwave::wavelet::{self, dwt, idwt, max_decomposition_level, WaveletSpec};
use sensorwave::SensorSeries;
use sensorwave_cli::commands::cmd_run;
use sensorwave_cli::pipeline::{self, Models};
use sensorwave_cli::settings::{DetectorKind, Settings};

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

use Outcome::{Fail, Pass, Skipped};

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("transform round trip and energy", c1_transform),
        ("lossless model reproduces training", c2_lossless),
        ("compression trade-off is monotone", c3_tradeoff),
        ("wavelet beats FreMEn K=3", c4_wavelet_vs_fremen),
        ("deployment dataset reproduction", c5_datasets),
        ("normalized entropy properties", c6_entropy),
        ("exact inference", c7_inference),
        ("HMLN* subset of HMLN, expert rules add detections", c8_expert_rules),
        ("baseline detectors", c9_baselines),
        ("end-to-end determinism", c10_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Fail(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed.push(n);
                ("FAIL", d)
            }
            Skipped(d) => ("SKIPPED", d),
        };
        println!("criterion {n:>2} {tag:<7} {name}: {detail}");
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn c1_transform() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let signals: Vec<Vec<f64>> = (0..100)
        .map(|_| {
            let n = 1usize << rng.gen_range(4..=14);
            (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
        })
        .collect();
    let catalog = WaveletSpec::catalog();
    let (mut worst_rt, mut worst_energy, mut transforms) = (0.0f64, 0.0f64, 0usize);
    for w in &catalog {
        for x in &signals {
            let max = max_decomposition_level(x.len(), w.filter_length);
            for q in 1..=max {
                let c = dwt(x, w, q).unwrap();
                let y = idwt(&c, w).unwrap();
                let err = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                worst_rt = worst_rt.max(err);
                if w.orthogonal {
                    let ex: f64 = x.iter().map(|v| v * v).sum();
                    let ec: f64 = c.iter().map(|(_, _, v)| v * v).sum();
                    worst_energy = worst_energy.max((ex - ec).abs() / ex);
                }
                transforms += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_rt < 1e-8 && worst_energy < 1e-9 && secs < 30.0,
        format!(
            "{} wavelets, {transforms} transforms, max round-trip error {worst_rt:.2e}, \
             max relative energy error {worst_energy:.2e}, {secs:.1} s",
            catalog.len()
        ),
    )
}

fn series(id: &str, values: Vec<u8>) -> SensorSeries {
    SensorSeries::new(id, values, 1.0 / 30.0, 0, "Test").unwrap()
}

fn c2_lossless() -> Outcome {
    let corpus = synthetic_train();
    let mut cases: Vec<SensorSeries> = corpus.series.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..20 {
        let n = rng.gen_range(16..3000);
        let p = rng.gen_range(0.02..0.6);
        cases.push(series(&format!("random_{i}"), (0..n).map(|_| u8::from(rng.gen_bool(p))).collect()));
    }
    let mut failures = Vec::new();
    let mut built = 0;
    for name in ["rbio3.1", "haar", "db2", "bior2.2"] {
        for s in &cases {
            let params = ModelParams {
                wavelet_name: name.into(),
                threshold: Threshold::Lossless,
                ..ModelParams::default()
            };
            let m = build_model(s, &params).unwrap();
            if m.diagnostics.training_rmse != 0.0 || m.reconstruct().unwrap() != s.values {
                failures.push(format!("{name}/{}", s.sensor_id));
            }
            built += 1;
        }
    }
    check(
        failures.is_empty(),
        format!("{built} models, training RMSE exactly 0 on all but {failures:?}"),
    )
}

fn synthetic_train() -> Corpus {
    let s = Settings::default();
    pipeline::folds(&s, &pipeline::load_corpus(&s).unwrap()).unwrap().0
}

/// Kept count and binarized training RMSE at each threshold.
fn sweep(s: &SensorSeries, taus: &[f64]) -> Vec<(usize, f64)> {
    taus.iter()
        .map(|&t| {
            let params = ModelParams {
                threshold: Threshold::Fixed(t),
                ..ModelParams::default()
            };
            let m = build_model(s, &params).unwrap();
            (m.diagnostics.kept_count, m.diagnostics.training_rmse)
        })
        .collect()
}

fn monotone(points: &[(usize, f64)]) -> bool {
    points.windows(2).all(|p| p[1].0 <= p[0].0 && p[1].1 >= p[0].1)
}

// Asserted on the entrance motion sensor, the sensor the trade-off curve is
// usually drawn for. Binarized RMSE is not monotone for every series (one
// dropped coefficient can flip a wrong sample back), so other sensors are
// only reported.
fn c3_tradeoff() -> Outcome {
    let corpus = pipeline::load_corpus(&Settings::default()).unwrap();
    let month = corpus.slice(0, 30 * 2880).unwrap();
    let w = WaveletSpec::from_name(sensorwave::model::DEFAULT_WAVELET).unwrap();
    let mut ok = false;
    let mut report = Vec::new();
    for s in &month.series {
        let mut taus: Vec<f64> = wavelet::dwt_padded(&s.as_f64(), &w, 1)
            .unwrap()
            .iter()
            .map(|(_, _, v)| v.abs())
            .collect();
        let top = taus.iter().copied().fold(0.0, f64::max);
        taus.extend((0..24).map(|i| top * 1.05 * i as f64 / 23.0));
        taus.sort_by(f64::total_cmp);
        taus.dedup();
        let points = sweep(s, &taus);
        let shape = monotone(&points);
        let last = points[points.len() - 1];
        if s.sensor_id == "entrance_motion" {
            ok = shape && taus.len() >= 20;
        }
        report.push(format!(
            "{} {} thresholds, kept {}->{} rmse {:.3}->{:.3}{}",
            s.sensor_id,
            taus.len(),
            points[0].0,
            last.0,
            points[0].1,
            last.1,
            if shape { "" } else { " (not monotone)" }
        ));
    }
    check(ok, report.join("; "))
}

fn c4_wavelet_vs_fremen() -> Outcome {
    let start = Instant::now();
    let s = Settings::default();
    let corpus = pipeline::load_corpus(&s).unwrap();
    let (train, test) = pipeline::folds(&s, &corpus).unwrap();
    let wavelet = Models::train_wavelet(&train, &s.model_params().unwrap()).unwrap();
    let fremen = Models::train_fremen(&train, 3).unwrap();
    let w = pipeline::forecast_report(&wavelet.forecast(&test).unwrap(), &test).unwrap().average;
    let f = pipeline::forecast_report(&fremen.forecast(&test).unwrap(), &test).unwrap().average;
    let secs = start.elapsed().as_secs_f64();
    let (wf, wa, ff, fa) = (w.f1.unwrap(), w.accuracy.unwrap(), f.f1.unwrap(), f.accuracy.unwrap());
    check(
        wf > ff && wa > fa && secs < 60.0,
        format!("wavelet F1 {wf:.1} acc {wa:.1} vs FreMEn F1 {ff:.1} acc {fa:.1}, {secs:.1} s"),
    )
}

struct Deployment {
    env: &'static str,
    preset: FoldPreset,
    accuracy: f64,
    f1: f64,
    similarity: [f64; 3],
}

fn c5_datasets() -> Outcome {
    let deployments = [
        Deployment {
            env: "SENSORWAVE_LCAS",
            preset: FoldPreset::Office,
            accuracy: 88.4,
            f1: 63.2,
            similarity: [23.1, 68.0, 36.2],
        },
        Deployment {
            env: "SENSORWAVE_ENRICHME",
            preset: FoldPreset::Apartment,
            accuracy: 89.2,
            f1: 94.0,
            similarity: [20.2, 74.2, 51.6],
        },
    ];
    let present: Vec<(&Deployment, PathBuf)> = deployments
        .iter()
        .filter_map(|d| std::env::var_os(d.env).map(|p| (d, PathBuf::from(p))))
        .filter(|(_, p)| p.exists())
        .collect();
    if present.is_empty() {
        return Skipped("no dataset exports (set SENSORWAVE_LCAS / SENSORWAVE_ENRICHME)".into());
    }
    let mut ok = true;
    let mut report = Vec::new();
    for (d, path) in present {
        let (train_days, test_days) = d.preset.days();
        let s = Settings {
            corpus: Some(path.to_string_lossy().into_owned()),
            mapping: std::env::var_os(format!("{}_MAPPING", d.env)).map(PathBuf::from),
            train_window: Some(format!("{train_days}d")),
            test_window: Some(format!("{test_days}d")),
            ..Settings::default()
        };
        let corpus = pipeline::load_corpus(&s).unwrap();
        let (train, test) = pipeline::folds(&s, &corpus).unwrap();
        let models = Models::train_wavelet(&train, &s.model_params().unwrap()).unwrap();
        let forecast = models.forecast(&test).unwrap();
        let avg = pipeline::forecast_report(&forecast, &test).unwrap().average;
        let rows = pipeline::entropy_rows(&test, Some(&forecast), 30.0, 30.0).unwrap();
        let sim = pipeline::similarity_report(&rows).unwrap();
        let got = [
            avg.accuracy.unwrap_or(f64::NAN),
            avg.f1.unwrap_or(f64::NAN),
            sim.rmse.unwrap_or(f64::NAN),
            sim.pearson_correlation.unwrap_or(f64::NAN),
            sim.explained_variance.unwrap_or(f64::NAN),
        ];
        let want = [d.accuracy, d.f1, d.similarity[0], d.similarity[1], d.similarity[2]];
        let within = got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 5.0);
        ok &= within;
        report.push(format!("{}: got {got:.1?} want {want:?}", d.env));
    }
    check(ok, report.join("; "))
}

fn probs(pairs: &[(&str, f64)]) -> ActivityDistribution {
    ActivityDistribution::Probabilities(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
}

fn c6_entropy() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for r in 2..=12 {
        let names: Vec<String> = (0..r).map(|i| format!("s{i}")).collect();
        let uniform = ActivityDistribution::Probabilities(names.iter().map(|n| (n.clone(), 1.0 / r as f64)).collect());
        let h = normalized_entropy(&uniform, r).unwrap();
        let d = normalized_entropy(&probs(&[("s0", 1.0)]), r).unwrap();
        ok &= (h - 1.0).abs() <= 1e-12 && d.abs() <= 1e-12;
    }
    notes.push("uniform = 1 and degenerate = 0 for R = 2..12".to_string());

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let r = rng.gen_range(2..10);
        let raw: Vec<f64> = (0..r).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let p: Vec<f64> = raw.iter().map(|v| v / total).collect();
        let mut perm: Vec<usize> = (0..r).collect();
        perm.shuffle(&mut rng);
        let a = ActivityDistribution::Probabilities((0..r).map(|i| (format!("s{i}"), p[i])).collect());
        let b = ActivityDistribution::Probabilities((0..r).map(|i| (format!("s{i}"), p[perm[i]])).collect());
        ok &= normalized_entropy(&a, r).unwrap() == normalized_entropy(&b, r).unwrap();
    }
    notes.push("permutation invariance exact on 200 cases".to_string());

    // 0.5 log2 2 + 2 * 0.25 log2 4 = 1.5 bits over log2 3.
    let h = normalized_entropy(&probs(&[("a", 0.5), ("b", 0.25), ("c", 0.25)]), 3).unwrap();
    ok &= (h - 0.9464).abs() <= 1e-4;
    notes.push(format!("{{0.5, 0.25, 0.25}} -> {h:.6}"));
    check(ok, notes.join("; "))
}

/// Brute force straight from the clause definitions: sum of exp(total
/// satisfied weight) over the eight worlds.
fn oracle_probability(e: &Evidence, rules: &RuleConfig, doors: &[String], motions: &[String]) -> f64 {
    let stat_weight = (if e.entropy_real >= rules.entropy_threshold { rules.weight(ClauseId::EntropyAboveThreshold) } else { 0.0 })
        + (if e.entropy_real > e.entropy_expected.unwrap() { rules.weight(ClauseId::EntropyAboveExpected) } else { 0.0 });
    let stat_free = rules.weight(ClauseId::EntropyAboveThreshold) + rules.weight(ClauseId::EntropyAboveExpected) - stat_weight;
    let mut action_weight = 0.0;
    let mut action_free = 0.0;
    for d in doors {
        if e.door_open_s[d] > rules.door_open_max_s {
            action_weight += rules.weight(ClauseId::DoorLeftOpen);
        } else {
            action_free += rules.weight(ClauseId::DoorLeftOpen);
        }
    }
    for m in motions {
        if e.motion_active[m] && e.in_rest_interval {
            action_weight += rules.weight(ClauseId::MotionDuringRest);
        } else {
            action_free += rules.weight(ClauseId::MotionDuringRest);
        }
    }
    let (mut num, mut den) = (0.0, 0.0);
    for s in [false, true] {
        for a in [false, true] {
            for i in [false, true] {
                let mut w = stat_free + action_free;
                if s {
                    w += stat_weight;
                }
                if a {
                    w += action_weight;
                }
                if !(s || a) || i {
                    w += rules.weight(ClauseId::Combine);
                }
                if !i {
                    w += rules.prior_weight;
                }
                let p = w.exp();
                den += p;
                if i {
                    num += p;
                }
            }
        }
    }
    num / den
}

fn random_case(rng: &mut ChaCha8Rng) -> (Evidence, RuleConfig, Vec<String>, Vec<String>) {
    let doors: Vec<String> = (0..rng.gen_range(0..3)).map(|i| format!("door{i}")).collect();
    let motions: Vec<String> = (0..rng.gen_range(0..4)).map(|i| format!("motion{i}")).collect();
    let mut rules = RuleConfig {
        entropy_threshold: rng.gen_range(0.0..1.0),
        door_open_max_s: rng.gen_range(10.0..600.0),
        door_sensors: doors.clone(),
        motion_sensors: motions.clone(),
        prior_weight: rng.gen_range(0.0..5.0),
        ..RuleConfig::default()
    };
    for c in ClauseId::WEIGHTED {
        rules.clause_weights.insert(c, rng.gen_range(0.01..12.0));
    }
    let evidence = Evidence {
        entropy_real: rng.gen_range(0.0..1.0),
        entropy_expected: Some(rng.gen_range(0.0..1.0)),
        door_open_s: doors.iter().map(|d| (d.clone(), rng.gen_range(0.0..900.0))).collect(),
        motion_active: motions.iter().map(|m| (m.clone(), rng.gen_bool(0.5))).collect(),
        in_rest_interval: rng.gen_bool(0.5),
    };
    (evidence, rules, doors, motions)
}

fn c7_inference() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for t in 0..1000 {
        let (e, rules, doors, motions) = random_case(&mut rng);
        let p = infer(&ground_network(t, e.clone(), &rules, true).unwrap()).probability;
        worst = worst.max((p - oracle_probability(&e, &rules, &doors, &motions)).abs());
    }
    let mut violations = 0;
    for t in 0..100 {
        let (mut e, mut rules, _, _) = random_case(&mut rng);
        // Make the threshold clause fire, then raise its weight.
        e.entropy_real = rules.entropy_threshold.max(0.5);
        let before = infer(&ground_network(t, e.clone(), &rules, true).unwrap()).probability;
        *rules.clause_weights.get_mut(&ClauseId::EntropyAboveThreshold).unwrap() += rng.gen_range(0.1..5.0);
        let after = infer(&ground_network(t, e, &rules, true).unwrap()).probability;
        if after < before - 1e-15 {
            violations += 1;
        }
    }
    check(
        worst <= 1e-12 && violations == 0,
        format!("max |P - oracle| {worst:.2e} over 1000 cases; {violations} monotonicity violations in 100"),
    )
}

fn c8_expert_rules() -> Outcome {
    let s = Settings::default();
    let corpus = pipeline::load_corpus(&s).unwrap();
    let (train, test) = pipeline::folds(&s, &corpus).unwrap();
    let forecast = Models::train_wavelet(&train, &s.model_params().unwrap()).unwrap().forecast(&test).unwrap();
    let rows = pipeline::entropy_rows(&test, Some(&forecast), 30.0, 30.0).unwrap();
    let full = pipeline::detect(DetectorKind::Hmln, &s, &rows, None, Some(&test)).unwrap();
    let star = pipeline::detect(DetectorKind::HmlnStar, &s, &rows, None, Some(&test)).unwrap();
    let escaped = (0..star.len()).filter(|&i| star.flags[i] && !full.flags[i]).count();
    let mut ok = escaped == 0;
    let mut notes = vec![format!("HMLN {} flags, HMLN* {} flags, {escaped} HMLN* flags missing from HMLN", full.flag_count(), star.flag_count())];
    let mut seen = 0;
    for label in &test.labels {
        if !matches!(label.kind, AnomalyKind::NighttimeMotion | AnomalyKind::DoorLeftOpen) {
            continue;
        }
        seen += 1;
        let inside: Vec<usize> = (0..rows.len())
            .filter(|&i| rows[i].timestamp < label.end_posix_s && label.start_posix_s < rows[i].timestamp + 30)
            .collect();
        let by_full = inside.iter().filter(|&&i| full.flags[i]).count();
        let by_star = inside.iter().filter(|&&i| star.flags[i]).count();
        ok &= by_full > 0 && by_star == 0;
        notes.push(format!("{:?}: HMLN {by_full}/{} windows, HMLN* {by_star}", label.kind, inside.len()));
    }
    ok &= seen >= 2;
    check(ok, notes.join("; "))
}

fn entropy_rows(values: &[f64]) -> Vec<EntropyRow> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| EntropyRow {
            timestamp: 1_700_000_000 + 30 * i as i64,
            entropy_real: v,
            entropy_expected: None,
        })
        .collect()
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Textbook LOF: k nearest by (distance, index), reachability
/// max(k-distance(o), d(p, o)), lrd = 1 / (mean reach + 1e-10).
fn oracle_lof(points: &[[f64; 3]], k: usize) -> Vec<f64> {
    let n = points.len();
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| {
                dist(&points[i], &points[a]).partial_cmp(&dist(&points[i], &points[b])).unwrap().then(a.cmp(&b))
            });
            order.truncate(k);
            order
        })
        .collect();
    let kdist: Vec<f64> = (0..n).map(|i| dist(&points[i], &points[neighbours[i][k - 1]])).collect();
    let lrd: Vec<f64> = (0..n)
        .map(|i| {
            let reach: f64 = neighbours[i].iter().map(|&o| kdist[o].max(dist(&points[i], &points[o]))).sum();
            1.0 / (reach / k as f64 + 1e-10)
        })
        .collect();
    (0..n)
        .map(|i| neighbours[i].iter().map(|&o| lrd[o]).sum::<f64>() / k as f64 / lrd[i])
        .collect()
}

fn c9_baselines() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sigma = 0.02;
    let mut x: Vec<f64> = (0..500).map(|_| 0.5 + sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    x[250] = 0.5 + 10.0 * sigma;
    let run = detect_gaussian1d(&entropy_rows(&x), None, 3.0).unwrap();
    let flagged: Vec<usize> = (0..x.len()).filter(|&i| run.flags[i]).collect();

    let mut worst = 0.0f64;
    for k in [1, 3, 5] {
        let points: Vec<[f64; 3]> = (0..20)
            .map(|_| [rng.gen_range(0.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let got = LofModel::fit(points.clone(), k).unwrap().in_sample_scores();
        for (g, o) in got.iter().zip(oracle_lof(&points, k)) {
            worst = worst.max((g - o).abs());
        }
    }
    check(
        flagged == [250] && worst <= 1e-9,
        format!("Gaussian1D flags {flagged:?}; LOF max |score - oracle| {worst:.2e} on 20 points, k = 1, 3, 5"),
    )
}

fn csv_files(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "csv") {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn c10_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let outputs: Vec<BTreeMap<PathBuf, Vec<u8>>> = ["a", "b"]
        .iter()
        .map(|name| {
            let s = Settings {
                out: Some(tmp.path().join(name)),
                ..Settings::default()
            };
            csv_files(&cmd_run(&s).unwrap())
        })
        .collect();
    let elapsed: Duration = start.elapsed();
    let differing: Vec<&PathBuf> = outputs[0]
        .iter()
        .filter(|(k, v)| outputs[1].get(*k) != Some(*v))
        .map(|(k, _)| k)
        .collect();
    let detections = outputs[0].keys().filter(|k| k.starts_with("detections")).count();
    check(
        differing.is_empty() && outputs[0].len() == outputs[1].len() && detections == 4,
        format!(
            "{} CSV files ({detections} detection runs), {} differ, two runs in {:.1} s",
            outputs[0].len(),
            differing.len(),
            elapsed.as_secs_f64()
        ),
    )
}
