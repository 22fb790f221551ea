//! One line per acceptance criterion.
//!
//! Exits 0 even when a criterion fails so that `cargo test` reports the
//! other targets; set `ACCEPTANCE_STRICT=1` to exit 1 on any failure.
//! `ACCEPTANCE_ONLY=3,5` runs a subset.

use std::process::ExitCode;

use cayley_spectra::verify::CRITERIA;

fn main() -> ExitCode {
    let only: Option<Vec<u32>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");

    let (mut passed, mut failed) = (0, 0);
    for c in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&c.number)) {
            continue;
        }
        let r = c.run();
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {:<16} {verdict} {:>9.3}s (budget {}s)  {}",
            r.criterion,
            r.name,
            r.elapsed.as_secs_f64(),
            r.budget_seconds,
            c.summary
        );
        for n in &r.notes {
            println!("    note: {n}");
        }
        for m in &r.mismatches {
            println!(
                "    mismatch: {}: expected {} got {}",
                m.item, m.expected, m.actual
            );
        }
        if r.over_budget {
            println!("    over budget");
        }
        if r.passed {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    println!("acceptance: {passed} passed, {failed} failed");
    if strict && failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
