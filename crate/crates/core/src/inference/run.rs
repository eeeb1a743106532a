use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Time-indexed verdicts of one detector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionRun {
    pub detector_name: String,
    pub timestamps: Vec<i64>,
    pub flags: Vec<bool>,
    /// `P(IsAnomaly)` for the network, the raw detector score otherwise.
    pub scores: Vec<f64>,
    pub triggered: Vec<Vec<String>>,
    pub parameters: BTreeMap<String, String>,
}

impl DetectionRun {
    pub fn new(
        detector_name: impl Into<String>,
        timestamps: Vec<i64>,
        flags: Vec<bool>,
        scores: Vec<f64>,
        triggered: Vec<Vec<String>>,
        parameters: BTreeMap<String, String>,
    ) -> Result<Self> {
        let run = Self {
            detector_name: detector_name.into(),
            timestamps,
            flags,
            scores,
            triggered,
            parameters,
        };
        run.validate()?;
        Ok(run)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.timestamps.len();
        if self.flags.len() != n || self.scores.len() != n || self.triggered.len() != n {
            return invalid(format!("detection run '{}' has ragged columns", self.detector_name));
        }
        if self.timestamps.windows(2).any(|w| w[1] <= w[0]) {
            return invalid(format!("timestamps of '{}' are not strictly increasing", self.detector_name));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn flag_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    /// Verdicts from index `from` on.
    pub fn tail(&self, from: usize) -> Self {
        let from = from.min(self.len());
        Self {
            detector_name: self.detector_name.clone(),
            timestamps: self.timestamps[from..].to_vec(),
            flags: self.flags[from..].to_vec(),
            scores: self.scores[from..].to_vec(),
            triggered: self.triggered[from..].to_vec(),
            parameters: self.parameters.clone(),
        }
    }
}

/// `timestamp,flag,probability,triggered_clauses`; clauses are `;`-joined.
pub fn write_detection_csv<W: Write>(run: &DetectionRun, mut out: W) -> Result<()> {
    writeln!(out, "timestamp,flag,probability,triggered_clauses")?;
    for i in 0..run.len() {
        writeln!(
            out,
            "{},{},{},{}",
            run.timestamps[i],
            u8::from(run.flags[i]),
            run.scores[i],
            run.triggered[i].join(";")
        )?;
    }
    Ok(())
}

pub fn read_detection_csv<R: BufRead>(name: &str, input: R) -> Result<DetectionRun> {
    let mut lines = input.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim() != "timestamp,flag,probability,triggered_clauses" {
        return Err(Error::Data(format!("unexpected detection CSV header '{header}'")));
    }
    let (mut ts, mut flags, mut scores, mut triggered) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Data(format!("detection CSV line {}: '{line}'", i + 2));
        let fields: Vec<&str> = line.splitn(4, ',').collect();
        if fields.len() != 4 {
            return Err(bad());
        }
        ts.push(fields[0].parse().map_err(|_| bad())?);
        flags.push(match fields[1] {
            "1" => true,
            "0" => false,
            _ => return Err(bad()),
        });
        scores.push(fields[2].parse().map_err(|_| bad())?);
        triggered.push(
            fields[3]
                .split(';')
                .filter(|c| !c.is_empty())
                .map(str::to_string)
                .collect(),
        );
    }
    DetectionRun::new(name, ts, flags, scores, triggered, BTreeMap::new()).map_err(|e| Error::Data(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let run = DetectionRun::new(
            "hmln",
            vec![0, 30, 60],
            vec![false, true, true],
            vec![0.1, 0.999_999_999_1, f64::INFINITY],
            vec![vec![], vec!["door_left_open".into(), "motion_during_rest".into()], vec![]],
            BTreeMap::new(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_detection_csv(&run, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("timestamp,flag,probability,triggered_clauses\n0,0,0.1,\n"));
        assert_eq!(read_detection_csv("hmln", buf.as_slice()).unwrap(), run);
    }

    #[test]
    fn rejects_bad_runs() {
        assert!(DetectionRun::new("x", vec![0, 0], vec![true; 2], vec![0.0; 2], vec![vec![]; 2], BTreeMap::new()).is_err());
        assert!(DetectionRun::new("x", vec![0], vec![], vec![0.0], vec![vec![]], BTreeMap::new()).is_err());
        assert!(read_detection_csv("x", "timestamp,flag\n".as_bytes()).is_err());
        assert!(read_detection_csv("x", "timestamp,flag,probability,triggered_clauses\n0,2,0.5,\n".as_bytes()).is_err());
    }
}
