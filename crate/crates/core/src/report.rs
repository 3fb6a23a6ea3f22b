use serde::Serialize;

/// At most this many witnesses are kept per report; the count is exact.
const MAX_WITNESSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

/// Outcome of one exhaustive check: the violated rules with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), violation_count: 0, violations: Vec::new(), notes: Vec::new() }
    }

    pub fn fail(&mut self, rule: &str, witness: impl Into<String>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(Violation { rule: rule.to_string(), witness: witness.into() });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Appends another report's violations and notes under this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(v);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}
