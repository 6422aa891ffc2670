//! Analyze a directory tree and print the JSON report, as `qmetrics
//! analyze <dir> --recursive` would.

use std::path::PathBuf;

use qmetrics::report::{analyze_paths, AnalysisConfig};

fn main() {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    let config = AnalysisConfig {
        recursive: true,
        ..AnalysisConfig::default()
    };
    let report = analyze_paths(&[root], &config);
    print!("{}", report.to_json());
    if report.has_errors() {
        std::process::exit(1);
    }
}
