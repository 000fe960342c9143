//! Runs every acceptance criterion at full size and prints one line per
//! criterion. Exits with status 1 when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use artin3_core::verify::{run_criterion, Status, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let mut failed = Vec::new();
    println!("\nrunning {} acceptance criteria", CRITERIA.len());
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, &opts);
        println!(
            "{}  [{:.1}s]",
            r.summary_line(),
            start.elapsed().as_secs_f64()
        );
        for d in &r.details {
            println!("    {d}");
        }
        if r.status != Status::Pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("\nacceptance: all {} criteria passed\n", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("\nacceptance: criteria {failed:?} did not pass\n");
        ExitCode::FAILURE
    }
}
