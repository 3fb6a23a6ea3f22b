use serde::Serialize;
use unrolling::report::Violation;
use unrolling::CheckReport;

pub const SCHEMA: &str = "unrolling-report/1";

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl From<CheckReport> for Check {
    fn from(r: CheckReport) -> Self {
        Check { name: r.check.clone(), passed: r.passed(), violation_count: r.violation_count, violations: r.violations, notes: r.notes }
    }
}

impl Check {
    pub fn verdict(name: impl Into<String>, passed: bool, notes: Vec<String>) -> Self {
        Check { name: name.into(), passed, violation_count: usize::from(!passed), violations: Vec::new(), notes }
    }
}

/// What a command did: its verdicts plus the files it wrote.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub files: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { schema: SCHEMA, command: command.into(), passed: true, checks: Vec::new(), files: Vec::new() }
    }

    pub fn push(&mut self, check: impl Into<Check>) {
        let c = check.into();
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.violation_count > 0 && !c.violations.is_empty() {
                out.push_str(&format!("{mark}  {} ({} violations)\n", c.name, c.violation_count));
            } else {
                out.push_str(&format!("{mark}  {}\n", c.name));
            }
            for v in &c.violations {
                out.push_str(&format!("      {}: {}\n", v.rule, v.witness));
            }
            for n in &c.notes {
                out.push_str(&format!("      {n}\n"));
            }
        }
        for f in &self.files {
            out.push_str(&format!("wrote {f}\n"));
        }
        out.push_str(&format!("verdict: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
