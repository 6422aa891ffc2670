#![allow(dead_code)]

pub mod generate;
pub mod oracle;

use std::path::{Path, PathBuf};

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every program fixture (`.qasm` and `.py`), sorted.
pub fn program_fixtures() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for sub in ["qasm", "qiskit"] {
        for entry in std::fs::read_dir(fixtures_dir().join(sub)).unwrap() {
            let path = entry.unwrap().path();
            if matches!(path.extension().and_then(|e| e.to_str()), Some("qasm" | "py")) {
                out.push(path);
            }
        }
    }
    out.sort();
    out
}

pub fn relative_error(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
