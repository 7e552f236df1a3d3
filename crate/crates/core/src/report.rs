//! Pass/fail records shared by every verification routine.

use serde::Serialize;
use std::fmt;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    /// Printable witness for failures, or the computed value for passes.
    pub witness: String,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct Report {
    pub name: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), cases: Vec::new() }
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl Into<String>) -> bool {
        self.cases.push(Case {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.into(),
        });
        ok
    }

    /// Records a check whose witness is only computed on failure.
    pub fn check_with(&mut self, id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> bool {
        let w = if ok { String::new() } else { witness() };
        self.check(id, ok, w)
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.name.clone();
        for mut c in other.cases {
            if !prefix.is_empty() {
                c.id = format!("{prefix}/{}", c.id);
            }
            self.cases.push(c);
        }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} passed, {} failed", self.name, self.passed(), self.failed())?;
        for c in self.failures() {
            writeln!(f, "  FAIL {}: {}", c.id, c.witness)?;
        }
        Ok(())
    }
}
