//! Runs the nine acceptance criteria over the exact field with generic q.
//!
//! `cargo test --test acceptance -- 3 7` runs a subset.

use qso4_core::acceptance::run_criterion;
use qso4_core::ExactQ;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let picked: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<usize> = if picked.is_empty() { (1..=9).collect() } else { picked };
    let q = ExactQ::generic();
    let mut failed = 0;
    for id in ids {
        let start = Instant::now();
        let Some(r) = run_criterion(id, &q) else {
            eprintln!("criterion {id}: no such criterion");
            return ExitCode::from(2);
        };
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({}; {}; {:.1}s)", r.id, r.name, r.detail, start.elapsed().as_secs_f64());
        if !r.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
