use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::solvers::SolverPath;

/// One assertion `value < limit` (or `value > limit`). A non-finite value
/// always fails.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: String,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: "<".into(),
            limit,
            passed: value.is_finite() && value < limit,
        }
    }

    pub fn above(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: ">".into(),
            limit,
            passed: value.is_finite() && value > limit,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub nodes_per_component: usize,
    pub interior_max_error: f64,
    pub interior_l2_error: f64,
    /// `error(n) / error(n/2)`; absent on the coarsest level.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub case_id: String,
    pub verb: String,
    pub path: Option<SolverPath>,
    pub nodes_per_component: usize,
    pub metrics: BTreeMap<String, f64>,
    pub identities: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub convergence: Vec<ConvergenceRow>,
    pub timings_ms: BTreeMap<String, f64>,
    pub passed: bool,
}

impl Report {
    pub fn new(case_id: &str, verb: &str, nodes: usize) -> Self {
        Self {
            case_id: case_id.into(),
            verb: verb.into(),
            nodes_per_component: nodes,
            ..Default::default()
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn check(&mut self, name: &str, value: f64, limit: f64) {
        self.checks.push(Check::below(name, value, limit));
    }

    pub fn check_above(&mut self, name: &str, value: f64, limit: f64) {
        self.checks.push(Check::above(name, value, limit));
    }

    /// Records an exact count as a check on `|found − expected|`.
    pub fn check_count(&mut self, name: &str, found: usize, expected: usize) {
        self.checks.push(Check::below(name, (found as f64 - expected as f64).abs(), 0.5));
    }

    pub fn timing(&mut self, name: &str, started: std::time::Instant) {
        self.timings_ms.insert(name.into(), started.elapsed().as_secs_f64() * 1e3);
    }

    /// Marks the report passed when every check passed and every recorded
    /// number is finite.
    pub fn finish(mut self) -> Self {
        let finite = self
            .metrics
            .values()
            .chain(self.identities.values())
            .chain(self.timings_ms.values())
            .all(|v| v.is_finite());
        self.passed = finite && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}
