//! Lower a Qiskit-style Python program into the shared program model.

use qmetrics::model::StatementKind;
use qmetrics::qiskit::parse_qiskit_dialect;

const PROGRAM: &str = "\
def entangle(circ, a, b):
    circ.h(a)
    circ.cx(a, b)
qc = QuantumCircuit(2, 2)
entangle(qc, 0, 1)
for i in range(2):
    qc.measure(i, i)
";

fn main() {
    let program = parse_qiskit_dialect(PROGRAM).unwrap();
    // QuantumCircuit(2, 2) declares synthetic registers
    for r in &program.registers {
        println!("{} {:?} width {}", r.name, r.kind, r.width);
    }
    for (i, s) in program.statements.iter().enumerate() {
        let module = program.module_of(i).map_or("?", |m| m.name.as_str());
        let what = match s.kind {
            StatementKind::GateApplication => format!("gate {}", s.gate_name.as_deref().unwrap_or_default()),
            StatementKind::Classical if s.callee.is_some() => format!("call {}", s.callee.as_deref().unwrap()),
            kind => kind.as_str().to_string(),
        };
        println!("line {:>2} [{module}] {what}", s.span.line);
    }

    // unsupported constructs are rejected with a position
    let err = parse_qiskit_dialect("while True:\n    qc.h(0)\n").unwrap_err();
    println!("rejected: {err}");
}
