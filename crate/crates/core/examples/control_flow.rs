//! Build the control-flow graph in both modes and print it as Graphviz.
//!
//! cargo run --example control_flow | dot -Tsvg > cfg.svg

use qmetrics::cfg::{build_qcfg, cyclomatic, CfgMode};
use qmetrics::qiskit::parse_qiskit_dialect;

fn main() {
    let program = parse_qiskit_dialect(include_str!("../fixtures/qiskit/looped_measure.py")).unwrap();

    for mode in [CfgMode::Fallthrough, CfgMode::Classical] {
        let g = build_qcfg(&program, mode).unwrap();
        eprintln!(
            "{:<12} nodes {} edges {} cyclomatic {}",
            mode.as_str(),
            g.node_count(),
            g.edge_count(),
            cyclomatic(&g).unwrap()
        );
    }

    let g = build_qcfg(&program, CfgMode::default()).unwrap();
    print!("{}", g.to_dot(&program, "looped_measure"));
}
