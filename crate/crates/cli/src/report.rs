//! Reports: one entry per check, a summary and a stable serialization.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use quintic_core::{Check, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub claim: &'static str,
    pub anchor: &'static str,
    pub status: &'static str,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<String>,
}

impl From<&Check> for Entry {
    fn from(c: &Check) -> Self {
        Entry {
            claim: c.claim.id(),
            anchor: c.claim.anchor(),
            status: c.status.as_str(),
            details: c.details.clone(),
            expected: c.expected.clone(),
            computed: c.computed.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub entries: Vec<Entry>,
    /// Command-specific values, e.g. the assembled conditions.
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION"),
            entries: Vec::new(),
            data: Map::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, c: &Check) {
        match c.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Discrepancy => self.summary.discrepancy += 1,
            Status::Inconclusive => self.summary.inconclusive += 1,
        }
        self.entries.push(Entry::from(c));
    }

    pub fn extend<'a>(&mut self, checks: impl IntoIterator<Item = &'a Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_owned(), value.into());
    }

    /// 0 when nothing failed; discrepancies only count in strict mode.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let s = self.summary;
        if s.fail > 0 || s.inconclusive > 0 || (strict && s.discrepancy > 0) {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut s = format!("{} ({} {})\n", self.command, env!("CARGO_PKG_NAME"), self.version);
        for e in &self.entries {
            let _ = writeln!(s, "[{}] {}  {}", e.status, e.claim, e.anchor);
            let _ = writeln!(s, "    {}", e.details);
            if let (Some(x), Some(y)) = (&e.expected, &e.computed) {
                let _ = writeln!(s, "    expected {x}; computed {y}");
            }
        }
        for (k, v) in &self.data {
            let _ = writeln!(s, "{k}: {v}");
        }
        let t = self.summary;
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} discrepancy, {} inconclusive",
            t.pass, t.fail, t.discrepancy, t.inconclusive
        );
        s
    }
}
