//! Scenario reports and their human and JSON renderings.

use orelab_core::maps::Witness;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub description: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn pass(description: impl Into<String>) -> Self {
        CheckResult {
            description: description.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(description: impl Into<String>, witness: Witness) -> Self {
        CheckResult {
            description: description.into(),
            passed: false,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Status implied by a list of checks: any failure makes the whole report fail.
pub fn status_of(checks: &[CheckResult]) -> Status {
    if checks.iter().all(|c| c.passed) {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Serialize, Deserialize)]
struct Document {
    schema_version: u32,
    reports: Vec<ScenarioReport>,
}

/// Renders reports. Human output has one `PASS`/`FAIL`/`ERROR` line per
/// scenario, failed checks indented below it, and a closing tally.
pub fn emit_report(reports: &[ScenarioReport], format: Format) -> String {
    match format {
        Format::Json => {
            let doc = Document {
                schema_version: REPORT_SCHEMA_VERSION,
                reports: reports.to_vec(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Human => {
            let mut out = String::new();
            for r in reports {
                match r.status {
                    Status::Error => {
                        out.push_str(&format!(
                            "ERROR {}: {}\n",
                            r.name,
                            r.error.as_deref().unwrap_or("unknown error")
                        ));
                    }
                    status => {
                        let word = if status == Status::Pass {
                            "PASS"
                        } else {
                            "FAIL"
                        };
                        out.push_str(&format!(
                            "{word} {} ({} checks, {} ms)\n",
                            r.name,
                            r.checks.len(),
                            r.elapsed_ms
                        ));
                    }
                }
                for c in r.checks.iter().filter(|c| !c.passed) {
                    out.push_str(&format!("  failed: {}\n", c.description));
                    if let Some(w) = &c.witness {
                        out.push_str(&format!("    witness: {}\n", w.description));
                        for e in &w.elements {
                            out.push_str(&format!("    payload: {e}\n"));
                        }
                    }
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            out.push_str(&format!(
                "{} passed, {} failed, {} errors\n",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Error)
            ));
            out
        }
    }
}

/// Parses a JSON report document written by [`emit_report`].
pub fn parse_report(text: &str) -> Result<Vec<ScenarioReport>, String> {
    let doc: Document = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if doc.schema_version != REPORT_SCHEMA_VERSION {
        return Err(format!(
            "unsupported report schema version {}",
            doc.schema_version
        ));
    }
    Ok(doc.reports)
}
