//! Architecture, pattern and Q-UML size metrics from the design fixtures.

use std::path::Path;

use qmetrics::design::{compute_delta, compute_gamma, compute_theta, parse_design_document, DesignFormat, DesignModel};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/design");
    for name in ["teleport.arch.json", "search.patterns.json", "oracle.quml.json"] {
        let path = dir.join(name);
        let format = DesignFormat::from_path(&path).unwrap();
        match parse_design_document(&path, format).unwrap() {
            DesignModel::Architecture(a) => println!("{name}: {:?}", compute_gamma(&a)),
            DesignModel::Patterns(p) => println!("{name}: {:?}", compute_delta(&p)),
            DesignModel::Quml(m) => println!("{name}: {:?}", compute_theta(&m)),
        }
    }
}
