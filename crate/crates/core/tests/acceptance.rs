//! Runs the ten acceptance criteria and prints one line per criterion. Built
//! without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use ngrpd::acceptance::{run, Fixtures};
use ngrpd::report::Status;

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = match run(None, &Fixtures::bundled(), jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let failing: Vec<u32> = report.criteria.iter().filter(|c| c.status != Status::Pass).map(|c| c.id as u32).collect();
    if report.criteria.len() != 10 || !failing.is_empty() {
        println!("acceptance: FAILED ({} criteria, not passing: {failing:?})", report.criteria.len());
        return ExitCode::FAILURE;
    }
    println!("acceptance: all 10 criteria pass");
    ExitCode::SUCCESS
}
