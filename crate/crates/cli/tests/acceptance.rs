//! Acceptance criterion 10: byte-determinism of the command line on the
//! full fixture set under fixed seeds, checked by hash comparison across
//! two independent runs and against the frozen outputs.

use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

mod harness;
use harness::{fixture_dirs, run_fixture};

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

#[test]
fn criterion_10_cli_byte_determinism() {
    let start = Instant::now();
    let budget = Duration::from_secs(60);
    let dirs = fixture_dirs();
    assert!(dirs.len() >= 30, "fixture corpus went missing");
    for dir in &dirs {
        let first = run_fixture(dir);
        let second = run_fixture(dir);
        let frozen = digest(&first.expected);
        let h1 = digest(&first.stdout);
        let h2 = digest(&second.stdout);
        assert_eq!(h1, h2, "{}: two runs disagree", first.name);
        assert_eq!(h1, frozen, "{}: output drifted from frozen bytes", first.name);
        assert_eq!(first.exit, first.expected_exit, "{}: exit code", first.name);
    }
    let elapsed = start.elapsed();
    println!(
        "acceptance criterion 10 (CLI byte determinism): PASS in {:.2}s (budget {:.0}s, {} fixtures)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        dirs.len(),
    );
    assert!(elapsed < budget, "criterion 10 exceeded its budget");
}
