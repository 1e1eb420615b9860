use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// The request as it was understood, after defaults and canonicalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RequestEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemEcho>,
    /// Canonical expanded form of the parsed insertion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub insertion: Option<String>,
    pub h: String,
    pub backend: String,
    pub breakdown: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemEcho {
    pub r: String,
    #[serde(rename = "N")]
    pub n: String,
    pub g: String,
    pub d: String,
    /// Expected dimension.
    pub e: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusRow {
    pub subset: Vec<String>,
    pub composition: Vec<String>,
    /// Exact element of `Q(z_N)`, written as a polynomial in `z` with
    /// rational coefficients.
    pub contribution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputationReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// `"ok"` when every check passed, `"check-failed"` otherwise.
    pub status: String,
    pub request: RequestEcho,
    pub result: String,
    /// False only for floating-backend results.
    pub exact: bool,
    pub h_values_checked: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<LocusRow>>,
    pub notes: Vec<String>,
    /// Wall-clock milliseconds per phase; present only when requested,
    /// since timings break byte-determinism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, String>>,
}

impl ComputationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let req = &self.request;
        let _ = writeln!(out, "command     {}", req.command);
        if let Some(p) = &req.problem {
            let _ = writeln!(out, "problem     r={} N={} g={} d={} (e={})", p.r, p.n, p.g, p.d, p.e);
        }
        if let Some(ins) = &req.insertion {
            let _ = writeln!(out, "insertion   {ins}");
        }
        if let Some(s) = &req.s {
            let _ = writeln!(out, "s           {s}");
        }
        if let Some(l) = &req.l {
            let _ = writeln!(out, "l           {l}");
        }
        let approx = if self.exact { "" } else { " (approximate)" };
        let _ = writeln!(out, "result      {}{approx}", self.result);
        if !self.h_values_checked.is_empty() {
            let _ = writeln!(out, "h checked   {}", self.h_values_checked.join(", "));
        }
        for (k, v) in &self.details {
            let _ = writeln!(out, "{k:<11} {v}");
        }
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            for c in &self.checks {
                let tag = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
            }
        }
        if let Some(rows) = &self.breakdown {
            let width = rows
                .iter()
                .map(|r| r.subset.join(",").len() + r.composition.join(",").len() + 5)
                .max()
                .unwrap_or(0);
            let _ = writeln!(out, "loci ({})", rows.len());
            for r in rows {
                let key = format!("{{{}}} ({})", r.subset.join(","), r.composition.join(","));
                let _ = writeln!(out, "  {key:<width$}  {}", r.contribution);
            }
        }
        if !self.notes.is_empty() {
            out.push_str("notes\n");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        if let Some(t) = &self.timings_ms {
            out.push_str("timings (ms)\n");
            for (k, v) in t {
                let _ = writeln!(out, "  {k:<14} {v}");
            }
        }
        out
    }
}

/// The document emitted instead of a report when a request fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub status: String,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorReport {
    pub fn new(err: &Error) -> Self {
        ErrorReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            status: "error".into(),
            error: ErrorBody {
                code: err.code().into(),
                message: err.to_string(),
                exit_code: err.exit_code(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_human(&self) -> String {
        format!("error [{}]: {}\n", self.error.code, self.error.message)
    }
}
