//! Machine-readable verification reports.
//!
//! Every `verify_*` routine returns a [`Report`]: a named list of checks,
//! each with a residual and a tolerance. Reports serialize to JSON with a
//! stable schema (`schema_version`), checks ordered by name.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A single verified identity: residual against tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A named suite of checks with optional run metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            n: None,
            seed: None,
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Record a check; it passes when the residual is finite and ≤ tol.
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.push_detailed(name, residual, tol, None);
    }

    pub fn push_detailed(
        &mut self,
        name: impl Into<String>,
        residual: f64,
        tol: f64,
        detail: Option<String>,
    ) {
        let pass = residual.is_finite() && residual <= tol;
        self.checks.push(Check {
            name: name.into(),
            residual,
            tol,
            pass,
            detail,
        });
    }

    /// Record a check that already failed with an error (residual = ∞).
    pub fn push_error(&mut self, name: impl Into<String>, tol: f64, err: &Error) {
        self.checks.push(Check {
            name: name.into(),
            residual: f64::INFINITY,
            tol,
            pass: false,
            detail: Some(err.to_string()),
        });
    }

    /// Sort checks by name and recompute the overall verdict.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// Largest residual across checks (0 when empty).
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.residual))
    }

    /// Turn a failed report into a typed error naming the first offender.
    pub fn require_pass(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.pass) {
            None => Ok(()),
            Some(c) => Err(Error::Verification {
                check: format!("{}/{}", self.suite, c.name),
                residual: c.residual,
                tol: c.tol,
            }),
        }
    }

    /// Apply tolerance overrides by check name or suite name, then re-judge.
    pub fn apply_tolerance_overrides(&mut self, overrides: &[(String, f64)]) {
        for check in &mut self.checks {
            for (name, tol) in overrides {
                if *name == check.name || *name == self.suite {
                    check.tol = *tol;
                    check.pass = check.residual.is_finite() && check.residual <= check.tol;
                }
            }
        }
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One `PASS`/`FAIL` line per check, then the suite verdict.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}/{}: residual {:.3e} (tol {:.3e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                self.suite,
                c.name,
                c.residual,
                c.tol
            ));
        }
        out.push_str(&format!(
            "{} suite {}\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite
        ));
        out
    }
}

/// Merge several reports into one summary (used by the full verify command).
pub fn merge(suite: impl Into<String>, reports: Vec<Report>) -> Report {
    let mut merged = Report::new(suite);
    for r in reports {
        for c in r.checks {
            merged.checks.push(Check {
                name: format!("{}/{}", r.suite, c.name),
                ..c
            });
        }
    }
    merged.finish()
}
