//! OpenQASM 2.0 frontend: a hand-written lexer and recursive-descent parser
//! that lower a `.qasm` file straight into a [`QProgram`].
//!
//! `include "qelib1.inc";` is recognised syntactically but never read; the
//! standard gate names are built in. A program that does not include the
//! library may declare its own gates under those names. Each `gate` declaration
//! becomes a module; `if (c==n) op;` becomes a branch header guarding one
//! statement.

mod lexer;
mod parser;

use thiserror::Error;

pub use lexer::{lex_qasm, QasmToken, TokenKind, KEYWORDS};
pub use parser::{parse_qasm, QELIB1_GATES};

use crate::model::QProgram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("{line}:{column}: unexpected character {found:?}")]
    Lex { line: usize, column: usize, found: char },
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{column}: duplicate register `{name}`")]
    DuplicateRegister { name: String, line: usize, column: usize },
    #[error("{line}:{column}: gate `{name}` is applied before it is declared")]
    UnknownGate { name: String, line: usize, column: usize },
    #[error("{line}:{column}: gate `{name}` is already declared")]
    DuplicateGate { name: String, line: usize, column: usize },
}

impl QasmError {
    pub fn line(&self) -> usize {
        match self {
            QasmError::Lex { line, .. }
            | QasmError::Parse { line, .. }
            | QasmError::DuplicateRegister { line, .. }
            | QasmError::UnknownGate { line, .. }
            | QasmError::DuplicateGate { line, .. } => *line,
        }
    }
}

/// Lexes and parses in one step.
pub fn parse_qasm_source(source: &str) -> Result<QProgram, QasmError> {
    parse_qasm(&lex_qasm(source)?)
}
