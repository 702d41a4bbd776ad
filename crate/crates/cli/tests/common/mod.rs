#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// The committed golden cases: arguments and the fixture holding the
/// expected stdout, all run on `tie4.txt` piped through stdin.
pub const GOLDEN: [(&[&str], &str); 3] = [
    (
        &["quantile", "--alpha", "1/2", "--method", "log"],
        "quantile_log.json",
    ),
    (
        &["quantile", "--alpha", "0.5", "--method", "midpoint"],
        "quantile_midpoint.json",
    ),
    (
        &["sweep", "--alpha", "1/2", "--schedule", "1e-1,1e-2,1e-3"],
        "sweep.json",
    ),
];

pub fn run_bin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logquantile"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn logquantile");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

/// `None` when stdout matches the fixture byte for byte, else a description.
pub fn golden_mismatch(args: &[&str], fixture_name: &str) -> Option<String> {
    let input = std::fs::read(fixture("tie4.txt")).unwrap();
    let expected = std::fs::read(fixture(fixture_name)).unwrap();
    let out = run_bin(args, &input);
    if out.status.code() != Some(0) {
        return Some(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    (out.stdout != expected).then(|| {
        format!(
            "stdout differs from {fixture_name}:\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}
