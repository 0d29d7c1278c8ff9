use serde::Serialize;

use super::config::{RunConfig, Suite};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Exact checks carry no tolerance; numeric checks report the worst error.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Discrepancy {
    Exact { equal: bool },
    Numeric { value: f64, tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The identity being checked, in words.
    pub identity: String,
    pub verdict: Verdict,
    pub discrepancy: Discrepancy,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    pub fn exact(name: impl Into<String>, identity: &str, equal: bool) -> Self {
        CheckResult {
            name: name.into(),
            identity: identity.to_string(),
            verdict: if equal { Verdict::Pass } else { Verdict::Fail },
            discrepancy: Discrepancy::Exact { equal },
            detail: String::new(),
        }
    }

    /// Passes when `value ≤ tolerance` and `value` is finite.
    pub fn numeric(name: impl Into<String>, identity: &str, value: f64, tolerance: f64) -> Self {
        let ok = value.is_finite() && value <= tolerance;
        CheckResult {
            name: name.into(),
            identity: identity.to_string(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            discrepancy: Discrepancy::Numeric { value, tolerance },
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Fails the check while keeping its discrepancy.
    pub fn require(mut self, cond: bool, why: &str) -> Self {
        if !cond {
            self.verdict = Verdict::Fail;
            if self.detail.is_empty() {
                self.detail = why.to_string();
            } else {
                self.detail = format!("{}; {why}", self.detail);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// A check that could not be evaluated.
    pub fn error(name: impl Into<String>, identity: &str, err: &Error) -> Self {
        CheckResult::exact(name, identity, false).with_detail(err.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub max_numeric_discrepancy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config_echo: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(config: &RunConfig, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let max_numeric_discrepancy = checks
            .iter()
            .filter_map(|c| match c.discrepancy {
                Discrepancy::Numeric { value, .. } => Some(value),
                Discrepancy::Exact { .. } => None,
            })
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
            all_passed: passed == checks.len(),
            max_numeric_discrepancy,
        };
        SuiteReport { suite: config.suite, config_echo: config.clone(), checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.all_passed
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Config(e.to_string());
        w.write_record(["suite", "name", "identity", "verdict", "mode", "discrepancy", "tolerance", "detail"])
            .map_err(err)?;
        for c in &self.checks {
            let (mode, value, tol) = match &c.discrepancy {
                Discrepancy::Exact { equal } => ("exact", equal.to_string(), String::new()),
                Discrepancy::Numeric { value, tolerance } => ("numeric", format!("{value:e}"), format!("{tolerance:e}")),
            };
            let verdict = if c.passed() { "pass" } else { "fail" };
            w.write_record([self.suite.name(), &c.name, &c.identity, verdict, mode, &value, &tol, &c.detail])
                .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
    }
}
