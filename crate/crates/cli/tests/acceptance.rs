//! Acceptance criteria 1 to 12. Prints one `PASS criterion N: ...` or
//! `FAIL criterion N: ...` line per criterion, followed by its measurements,
//! and exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use delaunay_lab::verify::{check_ids, run_check, Level, FULL_RUN_BUDGET_S};

fn criterion(id: u8) -> bool {
    let report = run_check(id, Level::Full);
    println!("{}", report.summary());
    for m in &report.measurements {
        println!("    {}: {:e} ({}, margin {:e})", m.label, m.value, m.bound, m.margin);
    }
    report.passed
}

/// Runs the binary end to end, as a user would.
fn full_run() -> bool {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_delaunay-lab"))
        .args(["verify", "--level", "full"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed().as_secs_f64();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    let failures = report["failures"].as_array().expect("failure list");
    let failing: Vec<String> = failures.iter().filter(|f| *f != 12).map(|f| f.to_string()).collect();
    let passed = out.status.success() && elapsed <= FULL_RUN_BUDGET_S && failing.is_empty();
    println!(
        "{} criterion 12: full verification within budget and without failures | {elapsed:.2} s (<= {FULL_RUN_BUDGET_S} s), failing criteria [{}]",
        if passed { "PASS" } else { "FAIL" },
        failing.join(", ")
    );
    passed
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in check_ids() {
        let ok = if id == 12 { full_run() } else { criterion(id) };
        if !ok {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
