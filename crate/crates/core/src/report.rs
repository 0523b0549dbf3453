//! The JSON report written by every CLI command.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// Where the checked statement comes from, or `artifact` for plumbing.
    pub reference: String,
    pub verdict: Verdict,
    pub details: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl Check {
    pub fn new(name: impl Into<String>, reference: impl Into<String>, pass: bool, details: impl Serialize) -> Check {
        Check {
            name: name.into(),
            reference: reference.into(),
            verdict: Verdict::from_bool(pass),
            details: serde_json::to_value(details).unwrap_or(Value::Null),
        }
    }

    pub fn pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub seed: u64,
    /// Seconds. The only field that varies between identical runs.
    pub wall_time: f64,
}

impl Report {
    pub fn new(command: impl Into<String>, config: impl Serialize, seed: u64, checks: Vec<Check>, wall_time: f64) -> Report {
        let passed = checks.iter().filter(|c| c.pass()).count();
        Report {
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            summary: Summary {
                passed,
                failed: checks.len() - passed,
            },
            checks,
            seed,
            wall_time,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, for stderr.
    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}\n", c.name));
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed ({:.2}s)\n",
            self.command, self.summary.passed, self.summary.failed, self.wall_time
        ));
        out
    }
}
