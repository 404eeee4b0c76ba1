//! Acceptance suite: one PASS/FAIL line per criterion at full scale, exit
//! status 1 on any failure. Arguments restrict the run to criteria whose
//! name contains one of them.

use std::process::ExitCode;

use subdiv::verify::{run_suite, Scale};

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let reports = run_suite(&filters, &Scale::FULL);
    for r in &reports {
        println!("{r}");
    }
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
