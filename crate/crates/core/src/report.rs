//! Per-claim verification records shared by every suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A statistical check inside its envelope.
    SoftPass,
    /// A statistical check outside its envelope; not a hard failure.
    SoftFail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn soft(ok: bool) -> Self {
        if ok {
            Status::SoftPass
        } else {
            Status::SoftFail
        }
    }

    pub fn is_soft(self) -> bool {
        matches!(self, Status::SoftPass | Status::SoftFail)
    }

    pub fn is_hard_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn passed(self) -> bool {
        matches!(self, Status::Pass | Status::SoftPass)
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SoftPass => "SOFT PASS",
            Status::SoftFail => "SOFT FAIL",
        }
    }
}

/// One verified statement with the data that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub witness: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(id: &str, statement: &str, ok: bool, witness: serde_json::Value) -> Self {
        CheckRecord {
            id: id.to_string(),
            statement: statement.to_string(),
            status: Status::from_bool(ok),
            witness,
            notes: Vec::new(),
        }
    }

    pub fn soft(id: &str, statement: &str, ok: bool, witness: serde_json::Value) -> Self {
        CheckRecord { status: Status::soft(ok), ..Self::new(id, statement, ok, witness) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

/// True when every record passed (soft failures included as failures).
pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}
