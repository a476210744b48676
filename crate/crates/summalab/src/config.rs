//! Experiment configuration: flat `key = value` files plus CLI overrides.
//!
//! The file format is deliberately structureless: one `key = value` pair per
//! line, `#` comments, repeated keys forming lists. CLI flags win over file
//! values, which win over per-experiment defaults.

use crate::error::{LabError, Result};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// corpus entry names; empty means the experiment's default set
    pub corpus: Vec<String>,
    pub grid_n: Option<usize>,
    pub points: Option<usize>,
    pub seed: u64,
    /// growth-function specs; empty means the experiment's default
    pub phi: Vec<String>,
    /// level ladder; empty means the experiment's default
    pub lambda: Vec<f64>,
    pub out_dir: PathBuf,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str) -> Self {
        ExperimentConfig {
            experiment: experiment.to_string(),
            corpus: Vec::new(),
            grid_n: None,
            points: None,
            seed: 1,
            phi: Vec::new(),
            lambda: Vec::new(),
            out_dir: PathBuf::from("out"),
            threads: None,
        }
    }

    /// Applies `key = value` lines from a config file.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::InvalidConfig {
            reason: format!("cannot read {}: {e}", path.display()),
        })?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| LabError::InvalidConfig {
                reason: format!("line {}: expected `key = value`", lineno + 1),
            })?;
            self.apply_pair(key.trim(), value.trim())?;
        }
        Ok(())
    }

    fn apply_pair(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| LabError::InvalidConfig {
            reason: format!("bad value `{value}` for `{what}`"),
        };
        match key {
            "experiment" => self.experiment = value.to_string(),
            "corpus" => self.corpus.push(value.to_string()),
            "n" => self.grid_n = Some(value.parse().map_err(|_| bad("n"))?),
            "points" => self.points = Some(value.parse().map_err(|_| bad("points"))?),
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "phi" => self.phi.push(value.to_string()),
            "lambda" => self.lambda.push(value.parse().map_err(|_| bad("lambda"))?),
            "out" => self.out_dir = PathBuf::from(value),
            "threads" => self.threads = Some(value.parse().map_err(|_| bad("threads"))?),
            other => {
                return Err(LabError::InvalidConfig { reason: format!("unknown key `{other}`") })
            }
        }
        Ok(())
    }

    /// Checks the invariants shared by all experiments.
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.grid_n {
            if n < 8 || !n.is_power_of_two() {
                return Err(LabError::InvalidResolution { n });
            }
        }
        if self.points == Some(0) {
            return Err(LabError::InvalidConfig { reason: "points must be positive".into() });
        }
        for name in &self.corpus {
            crate::corpus::Corpus::parse(name)?;
        }
        for spec in &self.phi {
            crate::phi::PhiSpec::parse(spec)?;
        }
        for &l in &self.lambda {
            if !(l > 0.0) {
                return Err(LabError::InvalidThreshold { value: l });
            }
        }
        Ok(())
    }
}
