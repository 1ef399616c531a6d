#![allow(dead_code)]

pub mod preprojective;

use std::process::Command;

/// Runs the `orbitcat` binary; returns (exit code, stdout, stderr).
pub fn orbitcat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbitcat"))
        .args(args)
        .env_remove("ORBITCAT_CACHE_DIR")
        .output()
        .expect("orbitcat runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
