//! The acceptance gate: runs every end-to-end criterion and prints one
//! pass/fail line per criterion (visible with `--nocapture`, and always on
//! failure).

use pretzel::harness::{run_acceptance, AcceptanceParams};

#[test]
fn acceptance() {
    let outcomes = run_acceptance(&AcceptanceParams::default());
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{} - {}: {}",
            if o.passed { "pass" } else { "FAIL" },
            o.name,
            o.detail
        );
        if !o.passed {
            failed.push(o.name);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
