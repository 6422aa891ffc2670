//! Parse an OpenQASM 2.0 file and list what the frontend recovered.
//!
//! cargo run --example parse_qasm -- fixtures/qasm/teleport.qasm

use qmetrics::qasm::parse_qasm_source;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/qasm/custom_gates.qasm").into());
    let source = std::fs::read_to_string(&path).expect("readable input");
    let program = match parse_qasm_source(&source) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{path}:{e}");
            std::process::exit(1);
        }
    };

    for r in &program.registers {
        println!("register {:<6} {:?} x{}", r.name, r.kind, r.width);
    }
    for m in &program.modules {
        println!("module {:<10} params {:?}, {} statements", m.name, m.params, m.statement_count());
    }
    for s in &program.statements {
        let gate = s.gate_name.as_deref().unwrap_or("-");
        println!(
            "{:>3}:{:<3} {:<16} {:<8} reads {:?} writes {:?}",
            s.span.line,
            s.span.column,
            s.kind.as_str(),
            gate,
            s.registers_read,
            s.registers_written
        );
    }
}
