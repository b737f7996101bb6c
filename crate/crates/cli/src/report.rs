//! Check results and their JSON and markdown renderings.

use std::fmt::{self, Display};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A number stated in the source material.
    Paper,
    /// Structural or definitional.
    Trivial,
    /// Computed by an independent route.
    Derived,
}

impl Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub provenance: Provenance,
}

/// Accumulates checks in the order they are run.
#[derive(Debug, Default)]
pub struct Checks {
    results: Vec<CheckResult>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    /// Passes when the two renderings are equal.
    pub fn exact(&mut self, id: &str, provenance: Provenance, expected: impl Display, computed: impl Display) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.results.push(CheckResult { id: id.to_string(), expected, computed, pass, provenance });
    }

    /// For toleranced or descriptive comparisons: `pass` is decided by the caller.
    pub fn judged(
        &mut self,
        id: &str,
        provenance: Provenance,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
    ) {
        self.results.push(CheckResult {
            id: id.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            provenance,
        });
    }

    /// Records a computation that failed outright.
    pub fn error(&mut self, id: &str, provenance: Provenance, expected: impl Display, err: impl Display) {
        self.judged(id, provenance, expected, format!("error: {err}"), false);
    }

    pub fn into_results(self) -> Vec<CheckResult> {
        self.results
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub notes: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, notes: Vec<String>, checks: Vec<CheckResult>) -> Self {
        let summary = Summary { total: checks.len(), passed: checks.iter().filter(|c| c.pass).count() };
        Self { suite: suite.to_string(), notes, checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# Suite `{}`\n\n", self.suite);
        if !self.notes.is_empty() {
            for n in &self.notes {
                out += &format!("- {n}\n");
            }
            out.push('\n');
        }
        out += "| id | expected | computed | pass | provenance |\n|---|---|---|---|---|\n";
        for c in &self.checks {
            out += &format!(
                "| `{}` | {} | {} | {} | {} |\n",
                c.id,
                cell(&c.expected),
                cell(&c.computed),
                if c.pass { "PASS" } else { "FAIL" },
                c.provenance
            );
        }
        out += &format!("\n**{}/{} passed**\n", self.summary.passed, self.summary.total);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
        }
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}
