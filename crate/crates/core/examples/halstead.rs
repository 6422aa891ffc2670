//! Operator/operand classification and the Halstead measures built on it.

use qmetrics::metrics::{compute_halstead, tokenize_halstead};
use qmetrics::qasm::parse_qasm_source;

fn main() {
    let source = "qreg q[2];\ncreg c[2];\nrz(pi/4) q[0];\ncx q[0],q[1];\nmeasure q[1] -> c[1];\n";
    let program = parse_qasm_source(source).unwrap();

    let tokens = tokenize_halstead(&program);
    println!("operators: {:?}", tokens.operators);
    println!("operands:  {:?}", tokens.operands);

    let h = compute_halstead(&program);
    println!("eta1={} eta2={} M1={} M2={}", h.eta1, h.eta2, h.m1, h.m2);
    println!("length {} vocabulary {}", h.length_m, h.vocabulary_eta);
    println!("estimated length {:.3}", h.estimated_length_me);
    println!("volume {:.3} difficulty {:.3} effort {:.3}", h.volume_vq, h.difficulty_dq, h.effort_eq);

    let empty = compute_halstead(&parse_qasm_source("").unwrap());
    println!("empty program degenerate: {}", empty.degenerate);
}
