//! Static size and structure metrics for quantum software.
//!
//! Source programs (OpenQASM 2.0, or a restricted Qiskit-Python dialect) are
//! lowered into a dialect-independent [`QProgram`](model::QProgram). From that
//! model the crate computes line-of-code counts, Halstead measures extended to
//! quantum operators and operands, the cyclomatic complexity of a quantum
//! control-flow graph, and Henry-Kafura information flow per module.
//! Design-level artifacts (architecture specs, pattern records, Q-UML models)
//! are read from small JSON documents and measured separately.

pub mod model;
pub mod qasm;
pub mod qiskit;
pub mod cfg;
pub mod metrics;
pub mod design;
pub mod report;
pub mod cli;
