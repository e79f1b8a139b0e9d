//! Runs every acceptance check at full size, prints one PASS/FAIL line per
//! criterion and exits nonzero if any check fails or overruns its budget.

use std::process::ExitCode;
use std::time::Instant;

use weylpath::verify::{Settings, CHECKS};

fn main() -> ExitCode {
    let settings = Settings::new(42);
    let start = Instant::now();
    let mut failed = 0;
    for check in &CHECKS {
        let outcome = check.run(&settings);
        println!("{}", outcome.line());
        if !outcome.ok() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        CHECKS.len() - failed,
        CHECKS.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
