//! Frontend for a restricted Qiskit-Python dialect.
//!
//! The dialect covers straight-line circuit construction code: assignments,
//! call and method-call expression statements, `for name in range(..):`,
//! `if expr:`, top-level `def`, and `print(..)`. Every logical line is one
//! physical line. Anything else (imports, `while`, classes, comprehensions,
//! `else`, ...) is rejected with [`QiskitError::UnsupportedSyntax`].

mod lexer;
mod lower;
mod parser;

use thiserror::Error;

pub use lexer::{lex_lines, PyToken, PyTokenKind, SourceLine};
pub use parser::{parse_lines, CallArg, Expr, PyDialectStmt, StmtForm, StmtParts};

use crate::model::{GateSet, QProgram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QiskitError {
    #[error("{line}:{column}: unsupported syntax: {construct}")]
    UnsupportedSyntax {
        line: usize,
        column: usize,
        construct: String,
    },
    #[error("{line}:0: indentation error: {message}")]
    IndentationError { line: usize, message: String },
    #[error("{line}:0: duplicate register `{name}`")]
    DuplicateRegister { name: String, line: usize },
}

impl QiskitError {
    pub fn line(&self) -> usize {
        match self {
            QiskitError::UnsupportedSyntax { line, .. }
            | QiskitError::IndentationError { line, .. }
            | QiskitError::DuplicateRegister { line, .. } => *line,
        }
    }
}

/// Parses dialect source with the default gate set.
pub fn parse_qiskit_dialect(source: &str) -> Result<QProgram, QiskitError> {
    parse_qiskit_dialect_with(source, &GateSet::default())
}

pub fn parse_qiskit_dialect_with(source: &str, gates: &GateSet) -> Result<QProgram, QiskitError> {
    let lines = lex_lines(source)?;
    let block = parse_lines(&lines)?;
    lower::lower(&block, lines.len(), gates)
}
