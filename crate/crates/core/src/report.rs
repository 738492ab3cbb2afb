//! Machine-readable pass/fail reports shared by the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
}

/// Where a checked value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Solver,
    Oracle,
    Bijection,
    Symfun,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            items: Vec::new(),
            message: None,
        }
    }

    pub fn refused(command: impl Into<String>, message: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Refused,
            items: Vec::new(),
            message: Some(message.into()),
        }
    }

    /// Records a comparison of exact values rendered as strings.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        provenance: Provenance,
    ) -> bool {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let passed = expected == actual;
        self.items.push(CheckItem {
            name: name.into(),
            expected,
            actual,
            provenance,
            passed,
        });
        self.refresh();
        passed
    }

    pub fn check_true(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        provenance: Provenance,
    ) -> bool {
        self.check(name, true, ok, provenance)
    }

    /// Appends another report's items under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut item in other.items {
            item.name = format!("{prefix}{}", item.name);
            self.items.push(item);
        }
        if other.status == Status::Refused && self.status != Status::Fail {
            self.status = Status::Refused;
            self.message = other.message;
        }
        self.refresh();
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    fn refresh(&mut self) {
        if self.status == Status::Refused {
            return;
        }
        self.status = if self.items.iter().all(|i| i.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_tracks_items() {
        let mut r = Report::new("x");
        assert!(r.check("a", 1, 1, Provenance::Formula));
        assert_eq!(r.status, Status::Pass);
        assert!(!r.check("b", 1, 2, Provenance::Oracle));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.failures().count(), 1);
        let json = r.to_json();
        assert!(json.contains("\"status\": \"fail\""));
        assert!(json.contains("\"provenance\": \"oracle\""));
    }
}
