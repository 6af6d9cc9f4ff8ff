use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Not performed; the detail says why.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Counterexample for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Ordered verification results; passes overall when nothing failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl Report {
    pub fn new() -> Self {
        Report {
            checks: Vec::new(),
            overall: true,
        }
    }

    pub fn pass(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, Status::Pass, detail.into(), None);
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, detail.into(), Some(witness.into()));
    }

    pub fn skip(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, Status::Skip, detail.into(), None);
    }

    /// `Ok(detail)` passes, `Err((detail, witness))` fails.
    pub fn record(&mut self, name: &str, outcome: Result<String, (String, String)>) {
        match outcome {
            Ok(detail) => self.pass(name, detail),
            Err((detail, witness)) => self.fail(name, detail, witness),
        }
    }

    fn push(&mut self, name: &str, status: Status, detail: String, witness: Option<String>) {
        if status == Status::Fail {
            self.overall = false;
        }
        self.checks.push(Check {
            name: name.to_owned(),
            status,
            detail,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.overall
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "CHECK {}: {} — {}", c.name, c.status, c.detail)?;
            if let Some(w) = &c.witness {
                write!(f, " [witness: {w}]")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "OVERALL: {}", if self.overall { "PASS" } else { "FAIL" })
    }
}
