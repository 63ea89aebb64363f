//! Runs without the libtest harness so the per-criterion lines always show.
//! `ACCEPTANCE_ONLY=2,9` restricts the run to the listed criteria.

use std::process::ExitCode;

use deform_core::verify::{self, ALL, DEFAULT_SEED};

fn selected() -> Vec<u32> {
    match std::env::var("ACCEPTANCE_ONLY") {
        Ok(s) if !s.trim().is_empty() => s
            .split(',')
            .map(|x| x.trim().parse().unwrap_or_else(|_| panic!("ACCEPTANCE_ONLY: bad criterion `{x}`")))
            .collect(),
        _ => ALL.to_vec(),
    }
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from other targets must not trigger a full run
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut failed = Vec::new();
    for id in selected() {
        let c = verify::run(id, DEFAULT_SEED);
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} ({:.1} s) {}", c.id, c.seconds, c.title);
        for f in c.report.failures() {
            println!("    failed {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
        }
        for v in &c.report.values {
            println!("    {} = {:e}", v.name, v.value);
        }
        if !c.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
