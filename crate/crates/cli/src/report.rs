//! Machine-readable run reports with a stable field order, so fixed inputs
//! and seeds reproduce byte-identical files.

use serde::Serialize;
use std::path::{Path, PathBuf};

/// Numeric knobs shared by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tolerance: f64,
    pub grid_h: f64,
    pub boundary_samples: usize,
    pub max_word_len: usize,
    pub refine_max: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckEntry {
    pub fn new(name: &str, pass: bool) -> Self {
        Self { name: name.to_string(), pass, measured: None, tolerance: None, note: None }
    }

    pub fn measured(mut self, value: f64) -> Self {
        self.measured = Some(value);
        self
    }

    pub fn tolerance(mut self, value: f64) -> Self {
        self.tolerance = Some(value);
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.note = Some(text.into());
        self
    }
}

#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckEntry>,
    pub overall: &'static str,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<CheckEntry>) -> Self {
        let overall = if checks.iter().all(|c| c.pass) { "pass" } else { "fail" };
        Self { suite: suite.to_string(), seed, checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }

    pub fn write_to(&self, dir: &Path) -> anyhow::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("report_{}.json", self.suite));
        std::fs::write(&path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(path)
    }

    pub fn print_lines(&self) {
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match (c.measured, c.tolerance) {
                (Some(m), Some(t)) => {
                    println!("{status} {} (measured {m:.3e}, tolerance {t:.1e})", c.name)
                }
                (Some(m), None) => println!("{status} {} (measured {m:.3e})", c.name),
                _ => println!("{status} {}", c.name),
            }
        }
        println!("suite {}: {}", self.suite, self.overall);
    }
}
