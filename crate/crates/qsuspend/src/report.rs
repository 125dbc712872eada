//! Verification reports and their JSON and text renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Value as Json};

/// Version of every JSON document this crate emits.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    pub runtime: Duration,
    pub detail: Option<String>,
    /// Set when the case aborted on a broken internal invariant.
    pub internal_error: bool,
}

impl CaseResult {
    pub fn to_json(&self) -> Json {
        let mut v = json!({
            "id": self.id,
            "status": self.status.as_str(),
            "runtime_ms": self.runtime.as_secs_f64() * 1e3,
        });
        if let Some(r) = self.residual {
            v["residual"] = json!(r);
        }
        if let Some(b) = self.bound {
            v["bound"] = json!(b);
        }
        if let Some(d) = &self.detail {
            v["detail"] = json!(d);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn status(&self) -> Status {
        if self.cases.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "status": self.status().as_str(),
            "cases": self.cases.iter().map(CaseResult::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub n: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        if self.suites.iter().all(|s| s.status() == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn has_internal_error(&self) -> bool {
        self.suites.iter().flat_map(|s| &s.cases).any(|c| c.internal_error)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "schema": SCHEMA,
            "command": "verify",
            "n": self.n,
            "status": self.status().as_str(),
            "suites": self.suites.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let passed = s.cases.iter().filter(|c| c.status == Status::Pass).count();
            let _ =
                writeln!(out, "{:<14} {}  ({passed}/{} cases)", s.suite, s.status().as_str(), s.cases.len());
            for c in s.cases.iter().filter(|c| c.status == Status::Fail) {
                let _ = write!(out, "  FAIL {}", c.id);
                if let Some(r) = c.residual {
                    let _ = write!(out, " residual={r:e}");
                }
                if let Some(d) = &c.detail {
                    let _ = write!(out, " ({d})");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "overall: {}", self.status().as_str());
        out
    }
}

/// Wraps a command result in the versioned envelope.
pub fn envelope(command: &str, mut body: Json) -> Json {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Some(dst), Some(src)) = (v.as_object_mut(), body.as_object_mut()) {
        dst.append(src);
    }
    v
}
