//! Line counts for a Qiskit program and an OpenQASM program.

use qmetrics::metrics::compute_loc_metrics;
use qmetrics::qasm::parse_qasm_source;
use qmetrics::qiskit::parse_qiskit_dialect;

fn main() {
    let py = include_str!("../fixtures/qiskit/looped_measure.py");
    let qasm = include_str!("../fixtures/qasm/bell.qasm");

    for (name, program) in [
        ("looped_measure.py", parse_qiskit_dialect(py).unwrap()),
        ("bell.qasm", parse_qasm_source(qasm).unwrap()),
    ] {
        let m = compute_loc_metrics(&program);
        println!("{name}");
        println!("  total lines         {}", m.phi1);
        println!("  gate lines          {}", m.phi2);
        println!("  measurement lines   {}", m.phi3);
        println!("  quantum lines       {}", m.phi4);
        println!("  qubits              {}", m.phi5);
        println!("  unique gates        {}", m.phi6);
    }
}
