//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use chowtope::suite::{criterion, Corpus, SuiteKind, CRITERIA};

fn main() -> ExitCode {
    let mut corpus = Corpus::new(SuiteKind::Full);
    let mut failed = Vec::new();
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let r = criterion(id, &mut corpus);
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {id:>2} {verdict} {name}: {} ({:.2?})", r.detail, start.elapsed());
        if let Some(c) = &r.counterexample {
            line.push_str(&format!("; first failure: {c}"));
        }
        println!("{line}");
        if !r.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
