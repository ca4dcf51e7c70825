//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;

use qwalk::acceptance::run_all;

fn main() -> ExitCode {
    let results = run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed.len(),
        results.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
