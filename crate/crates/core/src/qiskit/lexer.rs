use super::QiskitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PyTokenKind {
    Name,
    Keyword,
    Int,
    Float,
    Str,
    Op,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyToken {
    pub kind: PyTokenKind,
    pub text: String,
    pub column: usize,
}

/// One counted source line: indentation width plus its tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceLine {
    pub line: usize,
    pub indent: usize,
    pub tokens: Vec<PyToken>,
}

/// Keywords the dialect accepts.
pub const DIALECT_KEYWORDS: &[&str] = &["for", "in", "if", "def", "True", "False", "None"];

/// Python keywords outside the dialect; any occurrence is rejected.
pub const FOREIGN_KEYWORDS: &[&str] = &[
    "while", "class", "try", "except", "finally", "import", "from", "return", "with", "lambda",
    "else", "elif", "not", "and", "or", "pass", "break", "continue", "yield", "global", "nonlocal",
    "del", "assert", "raise", "async", "await", "is", "as",
];

const OPERATORS: &[&str] = &[
    "==", "!=", "<=", ">=", "<", ">", "=", "+", "-", "*", "/", "(", ")", "[", "]", ",", ".", ":",
];

/// Splits source into counted lines. Blank lines and lines whose first
/// non-whitespace character is `#` are dropped.
pub fn lex_lines(source: &str) -> Result<Vec<SourceLine>, QiskitError> {
    let mut out = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let prefix = &raw[..raw.len() - trimmed.len()];
        if prefix.contains('\t') {
            return Err(QiskitError::IndentationError {
                line,
                message: "tabs are not allowed in indentation".into(),
            });
        }
        let indent = prefix.chars().count();
        let tokens = lex_line(raw, line)?;
        check_brackets(&tokens, line)?;
        out.push(SourceLine {
            line,
            indent,
            tokens,
        });
    }
    Ok(out)
}

fn unsupported(line: usize, column: usize, construct: impl Into<String>) -> QiskitError {
    QiskitError::UnsupportedSyntax {
        line,
        column,
        construct: construct.into(),
    }
}

fn lex_line(raw: &str, line: usize) -> Result<Vec<PyToken>, QiskitError> {
    let chars: Vec<char> = raw.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let text = |end: usize| -> String { chars[start..end].iter().collect() };
        if c == ' ' {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if matches!(chars.get(i), Some('\'' | '"')) {
                return Err(unsupported(line, start, "string prefix"));
            }
            let word = text(i);
            let kind = if DIALECT_KEYWORDS.contains(&word.as_str()) {
                PyTokenKind::Keyword
            } else if FOREIGN_KEYWORDS.contains(&word.as_str()) {
                return Err(unsupported(line, start, word));
            } else {
                PyTokenKind::Name
            };
            tokens.push(PyToken {
                kind,
                text: word,
                column: start,
            });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut float = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if chars.get(i) == Some(&'.') {
                float = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if matches!(chars.get(i), Some('e' | 'E')) {
                let mut j = i + 1;
                if matches!(chars.get(j), Some('+' | '-')) {
                    j += 1;
                }
                if chars.get(j).is_some_and(|d| d.is_ascii_digit()) {
                    float = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            if chars.get(i).is_some_and(|d| d.is_ascii_alphanumeric() || *d == '_') {
                return Err(unsupported(line, start, "numeric literal suffix"));
            }
            tokens.push(PyToken {
                kind: if float { PyTokenKind::Float } else { PyTokenKind::Int },
                text: text(i),
                column: start,
            });
            continue;
        }
        if c == '\'' || c == '"' {
            if chars.get(i + 1) == Some(&c) && chars.get(i + 2) == Some(&c) {
                return Err(unsupported(line, start, "triple-quoted string"));
            }
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(unsupported(line, start, "unterminated string")),
                    Some('\\') => i += 2,
                    Some(&q) if q == c => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            tokens.push(PyToken {
                kind: PyTokenKind::Str,
                text: text(i),
                column: start,
            });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        if ["**", "//", "+=", "-=", "*=", "/=", "->"]
            .iter()
            .any(|op| rest.starts_with(op))
        {
            return Err(unsupported(line, start, rest[..2].to_string()));
        }
        match OPERATORS.iter().find(|op| rest.starts_with(*op)) {
            Some(op) => {
                i += op.len();
                tokens.push(PyToken {
                    kind: PyTokenKind::Op,
                    text: op.to_string(),
                    column: start,
                });
            }
            None => return Err(unsupported(line, start, c.to_string())),
        }
    }
    Ok(tokens)
}

/// Every logical line must also be a single physical line.
fn check_brackets(tokens: &[PyToken], line: usize) -> Result<(), QiskitError> {
    let mut stack = Vec::new();
    for t in tokens.iter().filter(|t| t.kind == PyTokenKind::Op) {
        match t.text.as_str() {
            "(" | "[" => stack.push(t),
            ")" | "]" => {
                let open = if t.text == ")" { "(" } else { "[" };
                match stack.pop() {
                    Some(o) if o.text == open => {}
                    _ => return Err(unsupported(line, t.column, format!("unbalanced `{}`", t.text))),
                }
            }
            _ => {}
        }
    }
    match stack.first() {
        Some(open) => Err(unsupported(line, open.column, "multi-line expression")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_blank_and_comment_lines() {
        let lines = lex_lines("# header\n\nx = 1  # trailing\n    # indented comment\n").unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].line, 3);
        assert_eq!(lines[0].tokens.len(), 3);
    }

    #[test]
    fn strings_and_numbers() {
        let lines = lex_lines("f('a#b', \"c\\\"d\", 1.5, 2, .5e-2)").unwrap();
        let kinds: Vec<_> = lines[0].tokens.iter().map(|t| t.kind).collect();
        use PyTokenKind::*;
        assert_eq!(
            kinds,
            [Name, Op, Str, Op, Str, Op, Float, Op, Int, Op, Float, Op]
        );
    }

    #[test]
    fn indentation_recorded() {
        let lines = lex_lines("for i in range(2):\n    h(i)\n").unwrap();
        assert_eq!(lines[1].indent, 4);
        assert_eq!(lines[0].tokens[0].kind, PyTokenKind::Keyword);
    }

    #[test]
    fn rejects_foreign_constructs() {
        for (src, construct) in [
            ("import qiskit", "import"),
            ("while x:", "while"),
            ("x += 1", "+="),
            ("x = 2 ** 3", "**"),
            ("d = {}", "{"),
            ("s = f'x'", "string prefix"),
            ("x = (1 +", "multi-line expression"),
            ("x = 1; y = 2", ";"),
        ] {
            match lex_lines(src) {
                Err(QiskitError::UnsupportedSyntax { construct: c, line: 1, .. }) => {
                    assert_eq!(c, construct, "{src}")
                }
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn tabs_are_indentation_errors() {
        assert!(matches!(
            lex_lines("if x:\n\th(q)"),
            Err(QiskitError::IndentationError { line: 2, .. })
        ));
    }
}
