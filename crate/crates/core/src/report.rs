//! Check reports with byte-stable text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Holds on every tested case; not a proof.
    Evidence,
    /// Decided by a complete finite test.
    Certified,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Evidence => "evidence",
            Status::Certified => "certified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub dims: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Check {
        Check { name: name.into(), status, dims: BTreeMap::new(), witness: None }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn dim(mut self, key: &str, value: usize) -> Check {
        self.dims.insert(key.to_string(), value as i64);
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }

    /// Attaches a witness only when the check failed.
    pub fn witness_on_fail(self, w: impl FnOnce() -> String) -> Check {
        if self.status == Status::Fail {
            self.witness(w())
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub fixture: String,
    pub engine_version: String,
    pub field: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(fixture: impl Into<String>, field: impl Into<String>) -> Report {
        Report {
            fixture: fixture.into(),
            engine_version: ENGINE_VERSION.to_string(),
            field: field.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    /// Sorts checks by name; stable for equal names.
    pub fn normalize(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut r = self.clone();
        r.normalize();
        let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut r = self.clone();
        r.normalize();
        let mut out = String::new();
        let _ = writeln!(out, "fixture: {}", r.fixture);
        let _ = writeln!(out, "engine:  {}", r.engine_version);
        let _ = writeln!(out, "field:   {}", r.field);
        let w = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &r.checks {
            let dims: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, "{:<w$}  {:<9}  {}", c.name, c.status.as_str(), dims.join(" "));
            if let Some(wit) = &c.witness {
                let _ = write!(out, "  [{wit}]");
            }
            out = out.trim_end().to_string();
            out.push('\n');
        }
        let fails = r.failures().len();
        let _ = writeln!(out, "{} checks, {} failed", r.checks.len(), fails);
        out
    }
}
