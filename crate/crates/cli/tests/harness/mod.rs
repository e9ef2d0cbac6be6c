//! Shared fixture harness: locate fixture directories, run the binary
//! with a fixture's arguments, and collect output against the frozen
//! bytes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_dirs() -> Vec<PathBuf> {
    let mut dirs: Vec<PathBuf> = std::fs::read_dir(fixture_root())
        .expect("fixtures directory exists")
        .filter_map(|e| {
            let p = e.ok()?.path();
            p.is_dir().then_some(p)
        })
        .collect();
    dirs.sort();
    dirs
}

pub struct FixtureResult {
    pub name: String,
    pub stdout: Vec<u8>,
    pub expected: Vec<u8>,
    pub exit: i32,
    pub expected_exit: i32,
}

pub fn run_fixture(dir: &Path) -> FixtureResult {
    let args: Vec<String> = std::fs::read_to_string(dir.join("cmd"))
        .expect("cmd file")
        .lines()
        .map(str::to_string)
        .filter(|l| !l.is_empty())
        .collect();
    let expected_exit: i32 = std::fs::read_to_string(dir.join("exit"))
        .expect("exit file")
        .trim()
        .parse()
        .expect("exit code");
    let expected = std::fs::read(dir.join("expected.out")).expect("expected output");
    let out = Command::new(env!("CARGO_BIN_EXE_lctpoly"))
        .args(&args)
        .current_dir(dir)
        .env_remove("LCTPOLY_THREADS")
        .output()
        .expect("binary runs");
    FixtureResult {
        name: dir.file_name().unwrap().to_string_lossy().into_owned(),
        stdout: out.stdout,
        expected,
        exit: out.status.code().unwrap_or(-1),
        expected_exit,
    }
}

