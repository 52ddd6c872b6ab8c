//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Exits non-zero when any criterion fails.

use std::process::ExitCode;

use combgenus::cli::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, &cfg);
        println!("{}", r.line());
        for f in r.failures.iter().take(10) {
            println!("    {f}");
        }
        if !r.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
