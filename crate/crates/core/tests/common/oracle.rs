//! Brute-force Halstead token counting straight from source text.
//!
//! Written against the classification rules only: it shares no code with
//! the crate's lexers or parsers.

use std::collections::BTreeMap;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub operators: BTreeMap<String, usize>,
    pub operands: BTreeMap<String, usize>,
}

impl Counts {
    fn op(&mut self, t: &str) {
        *self.operators.entry(t.to_string()).or_default() += 1;
    }

    fn arg(&mut self, t: &str) {
        *self.operands.entry(t.to_string()).or_default() += 1;
    }

    /// (eta1, eta2, m1, m2)
    pub fn summary(&self) -> (usize, usize, usize, usize) {
        (
            self.operators.len(),
            self.operands.len(),
            self.operators.values().sum(),
            self.operands.values().sum(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Raw {
    Word,
    Number,
    Text,
    Punct,
}

/// Splits one line into raw lexemes. `two_char` lists the multi-character
/// symbols of the language.
fn raw_tokens(line: &str, two_char: &[&str]) -> Vec<(Raw, String)> {
    let b: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_alphanumeric() || b[i] == '_') {
                i += 1;
            }
            out.push((Raw::Word, b[s..i].iter().collect()));
        } else if c.is_ascii_digit() || (c == '.' && i + 1 < b.len() && b[i + 1].is_ascii_digit()) {
            let s = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == '.') {
                i += 1;
            }
            if i < b.len() && (b[i] == 'e' || b[i] == 'E') {
                i += 1;
                if i < b.len() && (b[i] == '+' || b[i] == '-') {
                    i += 1;
                }
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Raw::Number, b[s..i].iter().collect()));
        } else if c == '"' || c == '\'' {
            let s = i;
            i += 1;
            while i < b.len() && b[i] != c {
                if b[i] == '\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
            out.push((Raw::Text, b[s..i.min(b.len())].iter().collect()));
        } else {
            let pair: String = b[i..(i + 2).min(b.len())].iter().collect();
            if two_char.contains(&pair.as_str()) {
                out.push((Raw::Punct, pair));
                i += 2;
            } else {
                out.push((Raw::Punct, c.to_string()));
                i += 1;
            }
        }
    }
    out
}

fn strip_comment<'a>(line: &'a str, marker: &str) -> &'a str {
    // neither fixture corpus puts comment markers inside string literals
    match line.find(marker) {
        Some(i) => &line[..i],
        None => line,
    }
}

const QASM_KEYWORDS: &[&str] = &[
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure", "reset", "barrier", "if",
    "U", "CX",
];
const QASM_FUNCTIONS: &[&str] = &["sin", "cos", "tan", "exp", "ln", "sqrt"];
const QASM_OPERATOR_SYMBOLS: &[&str] = &["->", "==", "+", "-", "*", "/", "^"];

/// OpenQASM 2.0: keywords, the applied or declared gate name (first word
/// of a statement or the word after `gate`/`opaque`), built-in functions,
/// `->`, `==` and arithmetic are operators; every other word, number and
/// string is an operand; punctuation is ignored.
pub fn qasm_counts(source: &str) -> Counts {
    let mut toks = Vec::new();
    for line in source.lines() {
        toks.extend(raw_tokens(strip_comment(line, "//"), &["->", "=="]));
    }
    let mut counts = Counts::default();
    let mut at_start = true;
    let mut if_depth: Option<usize> = None;
    let mut prev_word = String::new();
    for (k, (kind, text)) in toks.iter().enumerate() {
        let next_is_paren = toks.get(k + 1).is_some_and(|(_, t)| t == "(");
        match kind {
            Raw::Word => {
                if QASM_KEYWORDS.contains(&text.as_str())
                    || at_start
                    || prev_word == "gate"
                    || prev_word == "opaque"
                    || (next_is_paren && QASM_FUNCTIONS.contains(&text.as_str()))
                {
                    counts.op(text);
                } else {
                    counts.arg(text);
                }
                if text == "if" {
                    if_depth = Some(0);
                }
                prev_word = text.clone();
                at_start = false;
            }
            Raw::Number | Raw::Text => {
                counts.arg(text);
                at_start = false;
                prev_word.clear();
            }
            Raw::Punct => {
                prev_word.clear();
                if QASM_OPERATOR_SYMBOLS.contains(&text.as_str()) {
                    counts.op(text);
                }
                at_start = matches!(text.as_str(), ";" | "{" | "}");
                if let Some(d) = if_depth.as_mut() {
                    match text.as_str() {
                        "(" => *d += 1,
                        ")" => {
                            *d -= 1;
                            if *d == 0 {
                                if_depth = None;
                                at_start = true;
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    counts
}

const PY_OPERATOR_KEYWORDS: &[&str] = &["for", "in", "if", "def"];
const PY_OPERATOR_SYMBOLS: &[&str] = &["=", "==", "!=", "<", ">", "<=", ">=", "+", "-", "*", "/"];

/// Qiskit dialect: `for`/`in`/`if`/`def`, every word directly followed by
/// `(` (called or defined names), `=` and arithmetic or comparison symbols
/// are operators; every other word, number and string is an operand.
pub fn qiskit_counts(source: &str) -> Counts {
    let mut counts = Counts::default();
    for line in source.lines() {
        let toks = raw_tokens(strip_comment(line, "#"), &["==", "!=", "<=", ">="]);
        for (k, (kind, text)) in toks.iter().enumerate() {
            let next_is_paren = toks.get(k + 1).is_some_and(|(_, t)| t == "(");
            match kind {
                Raw::Word if PY_OPERATOR_KEYWORDS.contains(&text.as_str()) || next_is_paren => counts.op(text),
                Raw::Word | Raw::Number | Raw::Text => counts.arg(text),
                Raw::Punct if PY_OPERATOR_SYMBOLS.contains(&text.as_str()) => counts.op(text),
                Raw::Punct => {}
            }
        }
    }
    counts
}
