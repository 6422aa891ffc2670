use std::fmt;

use super::QasmError;
use crate::model::Span;

pub const KEYWORDS: &[&str] = &[
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure", "reset", "barrier", "if",
    "pi", "U", "CX",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Integer,
    Real,
    Symbol,
    Arrow,
    String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QasmToken {
    pub kind: TokenKind,
    /// Raw source text. String tokens keep their quotes.
    pub text: String,
    pub span: Span,
}

impl QasmToken {
    pub fn is(&self, kind: TokenKind, text: &str) -> bool {
        self.kind == kind && self.text == text
    }

    pub fn is_symbol(&self, text: &str) -> bool {
        self.is(TokenKind::Symbol, text)
    }

    pub fn is_keyword(&self, text: &str) -> bool {
        self.is(TokenKind::Keyword, text)
    }
}

impl fmt::Display for QasmToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.text)
    }
}

/// Splits OpenQASM 2.0 source into tokens, dropping whitespace and `//`
/// comments.
pub fn lex_qasm(source: &str) -> Result<Vec<QasmToken>, QasmError> {
    let mut tokens = Vec::new();
    for (line_idx, line) in source.lines().enumerate() {
        lex_line(line, line_idx + 1, &mut tokens)?;
    }
    Ok(tokens)
}

fn lex_line(line: &str, lineno: usize, out: &mut Vec<QasmToken>) -> Result<(), QasmError> {
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    let push = |out: &mut Vec<QasmToken>, kind, start: usize, end: usize| {
        out.push(QasmToken {
            kind,
            text: chars[start..end].iter().collect(),
            span: Span::new(lineno, start),
        })
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => break,
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let kind = if KEYWORDS.contains(&word.as_str()) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                };
                push(out, kind, start, i);
            }
            c if c.is_ascii_digit() || (c == '.' && next_is_digit(&chars, i + 1)) => {
                let (end, real) = scan_number(&chars, i);
                i = end;
                let kind = if real { TokenKind::Real } else { TokenKind::Integer };
                push(out, kind, start, i);
            }
            '"' => {
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(QasmError::Lex {
                        line: lineno,
                        column: start,
                        found: '"',
                    });
                }
                i += 1;
                push(out, TokenKind::String, start, i);
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 2;
                push(out, TokenKind::Arrow, start, i);
            }
            '=' if chars.get(i + 1) == Some(&'=') => {
                i += 2;
                push(out, TokenKind::Symbol, start, i);
            }
            '[' | ']' | '(' | ')' | '{' | '}' | ';' | ',' | '+' | '-' | '*' | '/' | '^' => {
                i += 1;
                push(out, TokenKind::Symbol, start, i);
            }
            other => {
                return Err(QasmError::Lex {
                    line: lineno,
                    column: start,
                    found: other,
                })
            }
        }
    }
    Ok(())
}

fn next_is_digit(chars: &[char], i: usize) -> bool {
    chars.get(i).is_some_and(|c| c.is_ascii_digit())
}

/// Returns the end index and whether the literal is real-valued.
fn scan_number(chars: &[char], mut i: usize) -> (usize, bool) {
    let mut real = false;
    while next_is_digit(chars, i) {
        i += 1;
    }
    if chars.get(i) == Some(&'.') {
        real = true;
        i += 1;
        while next_is_digit(chars, i) {
            i += 1;
        }
    }
    if matches!(chars.get(i), Some('e' | 'E')) {
        let mut j = i + 1;
        if matches!(chars.get(j), Some('+' | '-')) {
            j += 1;
        }
        if next_is_digit(chars, j) {
            real = true;
            i = j;
            while next_is_digit(chars, i) {
                i += 1;
            }
        }
    }
    (i, real)
}
