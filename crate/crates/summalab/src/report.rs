//! Deterministic CSV/JSON report emission.
//!
//! Reports must be byte-identical across reruns and across worker-thread
//! counts, so rows are sorted on a fixed key, floats are printed with the
//! shortest round-trip representation, line endings are LF, and JSON objects
//! carry sorted keys. Wall-clock timings are deliberately kept out of the
//! files and go to stderr instead.

use crate::error::{LabError, Result};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

/// One measurement row of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanRecord {
    pub point_id: usize,
    pub x1: f64,
    pub x2: f64,
    pub n: usize,
    pub m: usize,
    pub p_or_phi: String,
    pub value: f64,
}

/// A tagged table of measurement rows.
#[derive(Debug, Clone, Default)]
pub struct MeanReport {
    records: Vec<MeanRecord>,
}

impl MeanReport {
    pub fn new() -> Self {
        MeanReport { records: Vec::new() }
    }

    pub fn push(&mut self, record: MeanRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[MeanRecord] {
        &self.records
    }

    /// Fixed column order, sorted rows, LF endings.
    pub fn to_csv(&self) -> Result<String> {
        let mut rows = self.records.clone();
        for r in &rows {
            if !(r.value >= 0.0) || !r.value.is_finite() {
                return Err(LabError::InvalidConfig {
                    reason: format!("report value {} is not a finite non-negative number", r.value),
                });
            }
        }
        rows.sort_by(|a, b| {
            (a.point_id, a.n, a.m, &a.p_or_phi)
                .partial_cmp(&(b.point_id, b.n, b.m, &b.p_or_phi))
                .unwrap()
        });
        let mut out = String::from("point_id,x1,x2,n,m,p_or_phi,value\n");
        for r in rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.point_id, r.x1, r.x2, r.n, r.m, r.p_or_phi, r.value
            ));
        }
        Ok(out)
    }
}

/// Outcome of one named assertion of an experiment.
#[derive(Debug, Clone)]
pub struct AssertionOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl AssertionOutcome {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        AssertionOutcome { name: name.to_string(), pass, detail }
    }
}

/// Everything an experiment hands back for emission.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub report: MeanReport,
    pub assertions: Vec<AssertionOutcome>,
    pub constants: BTreeMap<String, f64>,
    /// extra deterministic artifacts: (file name, contents)
    pub artifacts: Vec<(String, String)>,
}

impl ExperimentResult {
    pub fn new() -> Self {
        ExperimentResult {
            report: MeanReport::new(),
            assertions: Vec::new(),
            constants: BTreeMap::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn assert_that(&mut self, name: &str, pass: bool, detail: String) {
        self.assertions.push(AssertionOutcome::new(name, pass, detail));
    }

    pub fn constant(&mut self, name: &str, value: f64) {
        self.constants.insert(name.to_string(), value);
    }
}

impl Default for ExperimentResult {
    fn default() -> Self {
        Self::new()
    }
}

/// serde_json maps are BTree-backed, so object keys serialize sorted.
fn summary_value(
    experiment: &str,
    seed: u64,
    result: &ExperimentResult,
    error: Option<&LabError>,
) -> Value {
    let mut root = Map::new();
    root.insert("experiment".into(), json!(experiment));
    root.insert("seed".into(), json!(seed));
    root.insert("pass".into(), json!(error.is_none() && result.passed()));
    let assertions: Vec<Value> = result
        .assertions
        .iter()
        .map(|a| json!({ "name": a.name, "pass": a.pass, "detail": a.detail }))
        .collect();
    root.insert("assertions".into(), Value::Array(assertions));
    let mut constants = Map::new();
    for (k, v) in &result.constants {
        constants.insert(k.clone(), json!(v));
    }
    root.insert("constants".into(), Value::Object(constants));
    if let Some(e) = error {
        root.insert(
            "error".into(),
            json!({ "kind": format!("{e:?}"), "message": e.to_string() }),
        );
    }
    Value::Object(root)
}

pub struct EmittedFiles {
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
}

/// Writes `report.csv`, `summary.json` and any extra artifacts into `dir`.
pub fn emit(
    dir: &Path,
    experiment: &str,
    seed: u64,
    result: &ExperimentResult,
    error: Option<&LabError>,
) -> Result<EmittedFiles> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join("report.csv");
    fs::write(&csv_path, result.report.to_csv()?)?;
    let json_path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(&summary_value(experiment, seed, result, error))
        .map_err(|e| LabError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(&json_path, text)?;
    for (name, contents) in &result.artifacts {
        fs::write(dir.join(name), contents)?;
    }
    Ok(EmittedFiles { csv_path, json_path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_header_only() {
        let report = MeanReport::new();
        assert_eq!(report.to_csv().unwrap(), "point_id,x1,x2,n,m,p_or_phi,value\n");
    }

    #[test]
    fn single_record_row() {
        let mut report = MeanReport::new();
        report.push(MeanRecord {
            point_id: 3,
            x1: 0.5,
            x2: -1.25,
            n: 8,
            m: 16,
            p_or_phi: "power:2".into(),
            value: 0.125,
        });
        assert_eq!(
            report.to_csv().unwrap(),
            "point_id,x1,x2,n,m,p_or_phi,value\n3,0.5,-1.25,8,16,power:2,0.125\n"
        );
    }

    #[test]
    fn rows_sort_on_fixed_key() {
        let mut report = MeanReport::new();
        for (pid, n) in [(2usize, 4usize), (1, 8), (1, 4)] {
            report.push(MeanRecord {
                point_id: pid,
                x1: 0.0,
                x2: 0.0,
                n,
                m: 1,
                p_or_phi: "p".into(),
                value: 1.0,
            });
        }
        let csv = report.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[1].starts_with("1,0,0,4"));
        assert!(lines[2].starts_with("1,0,0,8"));
        assert!(lines[3].starts_with("2,0,0,4"));
    }

    #[test]
    fn negative_values_are_rejected() {
        let mut report = MeanReport::new();
        report.push(MeanRecord {
            point_id: 0,
            x1: 0.0,
            x2: 0.0,
            n: 1,
            m: 1,
            p_or_phi: "p".into(),
            value: -1.0,
        });
        assert!(report.to_csv().is_err());
    }

    #[test]
    fn emitted_files_are_byte_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let mut result = ExperimentResult::new();
        result.constant("zeta", 2.5612);
        result.assert_that("holds", true, "ok".into());
        result.report.push(MeanRecord {
            point_id: 0,
            x1: 1.0,
            x2: 2.0,
            n: 1,
            m: 1,
            p_or_phi: "power:2".into(),
            value: 3.0,
        });
        let a = emit(dir.path(), "demo", 7, &result, None).unwrap();
        let csv1 = fs::read(&a.csv_path).unwrap();
        let json1 = fs::read(&a.json_path).unwrap();
        let b = emit(dir.path(), "demo", 7, &result, None).unwrap();
        assert_eq!(csv1, fs::read(&b.csv_path).unwrap());
        assert_eq!(json1, fs::read(&b.json_path).unwrap());
        let text = String::from_utf8(json1).unwrap();
        assert!(text.contains("\"pass\": true"));
        // keys of the top-level object appear in sorted order
        let ia = text.find("\"assertions\"").unwrap();
        let ic = text.find("\"constants\"").unwrap();
        let ie = text.find("\"experiment\"").unwrap();
        let ip = text.find("\"pass\"").unwrap();
        let is_ = text.find("\"seed\"").unwrap();
        assert!(ia < ic && ic < ie && ie < ip && ip < is_);
    }

    #[test]
    fn error_record_is_structured() {
        let dir = tempfile::tempdir().unwrap();
        let result = ExperimentResult::new();
        let err = LabError::InvalidScale { n: 99, max: 16 };
        let files = emit(dir.path(), "demo", 1, &result, Some(&err)).unwrap();
        let text = fs::read_to_string(files.json_path).unwrap();
        assert!(text.contains("\"error\""));
        assert!(text.contains("InvalidScale"));
        assert!(text.contains("\"pass\": false"));
    }
}
