//! Acceptance criteria, one line per criterion with wall time and limit.
//! Runs without the libtest harness so the lines always reach the output;
//! exits nonzero if any criterion fails or runs over its limit.
//!
//! Optional arguments select criteria by id: `cargo test --test acceptance -- 4 6`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use truncgr_core::checks::{run_check, CheckConfig, Outcome, CHECKS};

fn limit(id: usize) -> Duration {
    Duration::from_secs(match id {
        1 | 3 | 9 => 1,
        2 => 5,
        4 => 60,
        5 | 7 | 8 => 10,
        6 | 10 | 11 => 30,
        _ => unreachable!(),
    })
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed through; ignore them
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let config = CheckConfig::default();
    let mut failures = 0;
    for &(id, name) in &CHECKS {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        // criteria run one at a time so wall times are not inflated
        let start = Instant::now();
        let result = run_check(id, &config).expect("listed criterion");
        let elapsed = start.elapsed();
        let within = elapsed <= limit(id);
        let ok = result.outcome.passed() && within;
        failures += usize::from(!ok);
        let detail = match &result.outcome {
            Outcome::Pass if within => String::new(),
            Outcome::Pass => " (over time limit)".into(),
            Outcome::Fail(m) | Outcome::Diverged(m) => format!(" ({m})"),
        };
        println!(
            "{} criterion {id:>2} {name}: {:.3}s (limit {}s){detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit(id).as_secs()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
