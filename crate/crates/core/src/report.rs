//! Check records and the serializable verification report.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

/// Result of one verification check before it is filed in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub summary: String,
    pub witnesses: Vec<String>,
}

impl CheckOutcome {
    pub fn pass(summary: impl Into<String>) -> Self {
        CheckOutcome {
            passed: true,
            summary: summary.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn fail(summary: impl Into<String>, witnesses: Vec<String>) -> Self {
        CheckOutcome {
            passed: false,
            summary: summary.into(),
            witnesses,
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub witnesses: Vec<String>,
    /// Wall-clock time; kept out of JSON so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn from_outcome(name: impl Into<String>, outcome: CheckOutcome, elapsed: Duration) -> Self {
        CheckRecord {
            name: name.into(),
            status: if outcome.passed { Status::Pass } else { Status::Fail },
            summary: outcome.summary,
            witnesses: outcome.witnesses,
            elapsed,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::Skipped,
            summary: reason.into(),
            witnesses: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorProvenance {
    pub seed: Option<u64>,
    pub attempt: Option<u32>,
    pub field: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tensor: TensorProvenance,
    pub checks: Vec<CheckRecord>,
    pub verdict: Status,
}

impl VerificationReport {
    pub const SCHEMA: u32 = 1;

    pub fn new(tensor: TensorProvenance, checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().all(|c| c.status != Status::Fail) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            schema: Self::SCHEMA,
            tensor,
            checks,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "tensor: field {}, seed {}, attempt {}\n",
            self.tensor.field,
            self.tensor.seed.map_or("-".into(), |s| s.to_string()),
            self.tensor.attempt.map_or("-".into(), |s| s.to_string()),
        );
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {:<34} {:>9.3}s  {}\n",
                c.status,
                c.name,
                c.elapsed.as_secs_f64(),
                c.summary
            ));
            for w in c.witnesses.iter().take(10) {
                out.push_str(&format!("       witness: {w}\n"));
            }
            if c.witnesses.len() > 10 {
                out.push_str(&format!("       ... {} more\n", c.witnesses.len() - 10));
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
