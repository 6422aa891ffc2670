//! Per-module fan-in, fan-out and Henry-Kafura information flow.

use qmetrics::metrics::compute_information_flow;
use qmetrics::qasm::parse_qasm_source;

fn main() {
    let program = parse_qasm_source(include_str!("../fixtures/qasm/custom_gates.qasm")).unwrap();
    println!("{:<10} {:>6} {:>6} {:>7} {:>8}", "module", "length", "fan-in", "fan-out", "IF");
    for m in compute_information_flow(&program).modules {
        println!("{:<10} {:>6} {:>6} {:>7} {:>8}", m.module, m.length, m.fan_in, m.fan_out, m.if_value);
    }
}
