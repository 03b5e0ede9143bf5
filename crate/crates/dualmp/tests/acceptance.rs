//! Dedicated acceptance battery: runs every criterion once and prints one
//! pass/fail line per criterion (visible with `--nocapture`, and always on
//! failure).

use dualmp::suite::run_acceptance_suite;

#[test]
fn acceptance() {
    let report =
        run_acceptance_suite(dualmp::DEFAULT_TOL, 0).expect("battery infrastructure failure");
    let mut lines = Vec::new();
    for result in &report.results {
        let line = format!(
            "{} {:<28} {}",
            if result.passed { "PASS" } else { "FAIL" },
            result.id,
            result.details
        );
        println!("{line}");
        lines.push((result.passed, line));
    }
    let failures: Vec<&String> = lines
        .iter()
        .filter(|(passed, _)| !passed)
        .map(|(_, line)| line)
        .collect();
    assert!(
        failures.is_empty(),
        "acceptance criteria failed:\n{}",
        failures
            .iter()
            .map(|line| line.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    );
}
