//! Runs every fixture under `fixtures/` against its frozen output:
//! same bytes on stdout, same exit code.

mod harness;
use harness::{fixture_dirs, run_fixture};

#[test]

fn all_fixtures_match_frozen_outputs() {
    let dirs = fixture_dirs();
    assert!(dirs.len() >= 30, "fixture corpus went missing");
    for dir in dirs {
        let r = run_fixture(&dir);
        assert_eq!(
            r.exit, r.expected_exit,
            "{}: exit code changed",
            r.name
        );
        assert_eq!(
            r.stdout, r.expected,
            "{}: output bytes changed",
            r.name
        );
    }
}
