//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Criterion 5 is a known failure (see the decisions ledger); this target
//! fails only if an outcome differs from the expected one.

use std::process::ExitCode;

use unrolling::verify::{run, Criterion, VerifyConfig, CRITERIA};

/// The only criterion allowed to fail, and only in the recorded way: the
/// fibration and fiber-degree parts pass while the cofibering part fails
/// with the identity-sigma witness for both groups.
fn known_failure_shape(c: &Criterion) -> Result<(), String> {
    for d in &c.details {
        let failed = d.starts_with("FAILED");
        let cofibering = d.contains("pi_0 cofibering");
        if failed != cofibering {
            return Err(format!("unexpected detail: {d}"));
        }
        if cofibering && !(d.contains("splits into") && d.contains("|id<*>|id<*>`")) {
            return Err(format!("witness changed: {d}"));
        }
    }
    match c.details.iter().filter(|d| d.starts_with("FAILED")).count() {
        2 => Ok(()),
        n => Err(format!("expected 2 failing parts, got {n}")),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut problems = Vec::new();
    let mut passed = 0;
    for n in 1..=CRITERIA {
        let c = run(n, &cfg);
        println!("{}", c.line());
        passed += usize::from(c.passed);
        for d in &c.details {
            println!("    {d}");
        }
        let verdict = match (n, c.passed) {
            (5, true) => Err("now passes; update the ledger and this suite".to_string()),
            (5, false) => known_failure_shape(&c),
            (_, true) => Ok(()),
            (_, false) => Err("failed".to_string()),
        };
        if let Err(e) = verdict {
            problems.push(format!("criterion {n}: {e}"));
        }
    }
    println!("acceptance: {passed} of {CRITERIA} criteria pass");
    if problems.is_empty() {
        ExitCode::SUCCESS
    } else {
        for p in &problems {
            eprintln!("unexpected: {p}");
        }
        ExitCode::FAILURE
    }
}
