//! Runs every acceptance criterion at full size and prints one line per
//! criterion. Exits nonzero if any criterion fails or overruns its budget.

use std::process::ExitCode;

use quotvortex::selfcheck::{run, Options};

fn main() -> ExitCode {
    let outcomes = match run(Options::default()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("acceptance: cannot start worker pool: {e}");
            return ExitCode::FAILURE;
        }
    };
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {}/{} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
