use std::collections::{BTreeSet, HashSet};

use super::lexer::{QasmToken, TokenKind};
use super::QasmError;
use crate::model::{
    classify_statement, ArgRef, Dialect, GateSet, HalsteadToken, QModule, QProgram, QStatement,
    RegisterDecl, RegisterKind, Span, StatementSyntax, SyntaxForm, MAIN_MODULE,
};

/// Gate names defined by `qelib1.inc`. They are always available, whether
/// or not the file is included.
pub const QELIB1_GATES: &[&str] = &[
    "u3", "u2", "u1", "cx", "id", "u0", "u", "p", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "rx",
    "ry", "rz", "sx", "sxdg", "cz", "cy", "swap", "ch", "ccx", "cswap", "crx", "cry", "crz", "cu1",
    "cp", "cu3", "csx", "cu", "rxx", "rzz", "rccx", "rc3x", "c3x", "c3sqrtx", "c4x",
];

const EXPR_FUNCTIONS: &[&str] = &["sin", "cos", "tan", "exp", "ln", "sqrt"];

/// Parses a token stream produced by [`lex_qasm`](super::lex_qasm).
pub fn parse_qasm(tokens: &[QasmToken]) -> Result<QProgram, QasmError> {
    let mut parser = Parser::new(tokens);
    parser.program()?;
    Ok(parser.finish())
}

struct Parser<'t> {
    tokens: &'t [QasmToken],
    pos: usize,
    gates: GateSet,
    statements: Vec<QStatement>,
    registers: Vec<RegisterDecl>,
    modules: Vec<QModule>,
    main_ranges: Vec<std::ops::Range<usize>>,
    main_start: usize,
    known_gates: HashSet<String>,
    declared_gates: HashSet<String>,
    qelib_included: bool,
    halstead: Vec<HalsteadToken>,
}

struct Operation {
    name: String,
    span: Span,
    args: Vec<ArgRef>,
    callee: Option<String>,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [QasmToken]) -> Self {
        Parser {
            tokens,
            pos: 0,
            gates: GateSet::default(),
            statements: Vec::new(),
            registers: Vec::new(),
            modules: Vec::new(),
            main_ranges: Vec::new(),
            main_start: 0,
            known_gates: ["U", "CX"]
                .iter()
                .chain(QELIB1_GATES)
                .map(|s| s.to_string())
                .collect(),
            declared_gates: HashSet::new(),
            qelib_included: false,
            halstead: Vec::new(),
        }
    }

    fn finish(mut self) -> QProgram {
        let end = self.statements.len();
        if self.main_start < end {
            self.main_ranges.push(self.main_start..end);
        }
        let main = QModule::new(MAIN_MODULE, Vec::new(), self.main_ranges, &self.statements);
        let mut modules = vec![main];
        modules.extend(self.modules);
        let lines: BTreeSet<usize> = self.tokens.iter().map(|t| t.span.line).collect();
        QProgram {
            statements: self.statements,
            registers: self.registers,
            modules,
            source_dialect: Dialect::OpenQasm2,
            source_lines_total: lines.len(),
            tokens: self.halstead,
        }
    }

    // ---- token plumbing ----

    fn peek(&self) -> Option<&'t QasmToken> {
        self.tokens.get(self.pos)
    }

    fn peek_is_symbol(&self, s: &str) -> bool {
        self.peek().is_some_and(|t| t.is_symbol(s))
    }

    fn end_span(&self) -> Span {
        self.tokens
            .last()
            .map(|t| Span::new(t.span.line, t.span.column + t.text.chars().count()))
            .unwrap_or(Span::new(1, 0))
    }

    fn error(&self, expected: &str) -> QasmError {
        match self.peek() {
            Some(t) => QasmError::Parse {
                line: t.span.line,
                column: t.span.column,
                expected: expected.to_string(),
                found: t.to_string(),
            },
            None => {
                let span = self.end_span();
                QasmError::Parse {
                    line: span.line,
                    column: span.column,
                    expected: expected.to_string(),
                    found: "end of input".to_string(),
                }
            }
        }
    }

    fn bump(&mut self) -> &'t QasmToken {
        let tok = &self.tokens[self.pos];
        self.pos += 1;
        tok
    }

    fn record(&mut self, tok: &QasmToken, operator: bool) {
        let t = if operator {
            HalsteadToken::operator(tok.text.clone(), tok.span.line)
        } else {
            HalsteadToken::operand(tok.text.clone(), tok.span.line)
        };
        self.halstead.push(t);
    }

    fn expect_symbol(&mut self, s: &str) -> Result<&'t QasmToken, QasmError> {
        if self.peek_is_symbol(s) {
            Ok(self.bump())
        } else {
            Err(self.error(&format!("`{s}`")))
        }
    }

    fn expect_kind(&mut self, kind: TokenKind, what: &str) -> Result<&'t QasmToken, QasmError> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.bump()),
            _ => Err(self.error(what)),
        }
    }

    fn operator_keyword(&mut self, kw: &str) -> Result<&'t QasmToken, QasmError> {
        match self.peek() {
            Some(t) if t.is_keyword(kw) => {
                let t = self.bump();
                self.record(t, true);
                Ok(t)
            }
            _ => Err(self.error(&format!("`{kw}`"))),
        }
    }

    fn operand_identifier(&mut self) -> Result<&'t QasmToken, QasmError> {
        let t = self.expect_kind(TokenKind::Identifier, "identifier")?;
        self.record(t, false);
        Ok(t)
    }

    fn operand_integer(&mut self) -> Result<&'t QasmToken, QasmError> {
        let t = self.expect_kind(TokenKind::Integer, "integer")?;
        self.record(t, false);
        Ok(t)
    }

    // ---- grammar ----

    fn program(&mut self) -> Result<(), QasmError> {
        if self.peek().is_some_and(|t| t.is_keyword("OPENQASM")) {
            self.operator_keyword("OPENQASM")?;
            match self.peek() {
                Some(t) if t.kind == TokenKind::Real && t.text.starts_with("2.") => {
                    let t = self.bump();
                    self.record(t, false);
                }
                _ => return Err(self.error("version `2.0`")),
            }
            self.expect_symbol(";")?;
        }
        while self.peek().is_some() {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), QasmError> {
        let tok = self.peek().expect("caller checked for input");
        match (tok.kind, tok.text.as_str()) {
            (TokenKind::Keyword, "include") => self.include(),
            (TokenKind::Keyword, "qreg") => self.register_decl(RegisterKind::Quantum),
            (TokenKind::Keyword, "creg") => self.register_decl(RegisterKind::Classical),
            (TokenKind::Keyword, "gate") => self.gate_decl(),
            (TokenKind::Keyword, "opaque") => self.opaque_decl(),
            (TokenKind::Keyword, "if") => self.if_statement(),
            (TokenKind::Keyword, "OPENQASM") => Err(self.error("statement")),
            _ => {
                let op = self.quantum_op(false)?;
                self.push_operation(op);
                Ok(())
            }
        }
    }

    fn include(&mut self) -> Result<(), QasmError> {
        self.operator_keyword("include")?;
        let file = self.expect_kind(TokenKind::String, "file name string")?;
        self.record(file, false);
        self.expect_symbol(";")?;
        if file.text.trim_matches('"') == "qelib1.inc" {
            self.qelib_included = true;
        }
        Ok(())
    }

    fn register_decl(&mut self, kind: RegisterKind) -> Result<(), QasmError> {
        let kw = self.bump();
        self.record(kw, true);
        let name = self.operand_identifier()?;
        self.expect_symbol("[")?;
        let width_tok = self.operand_integer()?;
        let width: usize = width_tok.text.parse().unwrap_or(0);
        if width == 0 {
            return Err(QasmError::Parse {
                line: width_tok.span.line,
                column: width_tok.span.column,
                expected: "positive register width".to_string(),
                found: width_tok.to_string(),
            });
        }
        self.expect_symbol("]")?;
        self.expect_symbol(";")?;
        if self.registers.iter().any(|r| r.name == name.text) {
            return Err(QasmError::DuplicateRegister {
                name: name.text.clone(),
                line: name.span.line,
                column: name.span.column,
            });
        }
        self.registers.push(RegisterDecl {
            name: name.text.clone(),
            kind,
            width,
        });
        self.push_statement(StatementSyntax {
            span: kw.span,
            form: SyntaxForm::Declaration,
            callee: None,
        });
        Ok(())
    }

    /// `gate name(params) qargs { body }` becomes its own module.
    fn gate_decl(&mut self) -> Result<(), QasmError> {
        self.operator_keyword("gate")?;
        let (name, mut params) = self.gate_signature()?;
        self.expect_symbol("{")?;
        let start = self.statements.len();
        if self.main_start < start {
            self.main_ranges.push(self.main_start..start);
        }
        while !self.peek_is_symbol("}") {
            if self.peek().is_none() {
                return Err(self.error("`}`"));
            }
            let op = self.quantum_op(true)?;
            self.push_operation(op);
        }
        self.bump();
        let end = self.statements.len();
        self.main_start = end;
        // Declared after its body so the body cannot recurse into itself.
        self.known_gates.insert(name.text.clone());
        self.declared_gates.insert(name.text.clone());
        params.dedup();
        let module = QModule::new(name.text.clone(), params, std::iter::once(start..end).collect(), &self.statements);
        self.modules.push(module);
        Ok(())
    }

    fn opaque_decl(&mut self) -> Result<(), QasmError> {
        self.operator_keyword("opaque")?;
        let (name, _) = self.gate_signature()?;
        self.expect_symbol(";")?;
        self.known_gates.insert(name.text.clone());
        self.declared_gates.insert(name.text.clone());
        Ok(())
    }

    /// `name ( params )? qargs`; returns the name and all formal names.
    fn gate_signature(&mut self) -> Result<(&'t QasmToken, Vec<String>), QasmError> {
        let name = self.expect_kind(TokenKind::Identifier, "gate name")?;
        self.record(name, true);
        let clashes_with_library =
            self.qelib_included && QELIB1_GATES.contains(&name.text.as_str());
        if name.text == MAIN_MODULE
            || self.declared_gates.contains(&name.text)
            || clashes_with_library
        {
            return Err(QasmError::DuplicateGate {
                name: name.text.clone(),
                line: name.span.line,
                column: name.span.column,
            });
        }
        let mut formals = Vec::new();
        if self.peek_is_symbol("(") {
            self.bump();
            if !self.peek_is_symbol(")") {
                formals.extend(self.identifier_list()?);
            }
            self.expect_symbol(")")?;
        }
        formals.extend(self.identifier_list()?);
        Ok((name, formals))
    }

    fn identifier_list(&mut self) -> Result<Vec<String>, QasmError> {
        let mut names = vec![self.operand_identifier()?.text.clone()];
        while self.peek_is_symbol(",") {
            self.bump();
            names.push(self.operand_identifier()?.text.clone());
        }
        Ok(names)
    }

    /// `if ( creg == int ) qop` lowers to a branch header guarding one statement.
    fn if_statement(&mut self) -> Result<(), QasmError> {
        let kw = self.operator_keyword("if")?;
        self.expect_symbol("(")?;
        let creg = self.operand_identifier()?;
        let eq = self.expect_symbol("==")?;
        self.record(eq, true);
        self.operand_integer()?;
        self.expect_symbol(")")?;
        let header = self.statements.len();
        self.push_statement(StatementSyntax {
            span: kw.span,
            form: SyntaxForm::BranchHeader {
                reads: vec![creg.text.clone()],
            },
            callee: None,
        });
        if self.peek().is_none() {
            return Err(self.error("quantum operation"));
        }
        let op = self.quantum_op(false)?;
        self.push_operation(op);
        self.statements[header].body_len = 1;
        Ok(())
    }

    /// measure / reset / barrier / U / CX / named gate application.
    fn quantum_op(&mut self, in_gate_body: bool) -> Result<Operation, QasmError> {
        let tok = self.peek().expect("caller checked for input");
        let span = tok.span;
        match (tok.kind, tok.text.as_str()) {
            (TokenKind::Keyword, "measure") if !in_gate_body => {
                self.operator_keyword("measure")?;
                let src = self.argument()?;
                let arrow = self.expect_kind(TokenKind::Arrow, "`->`")?;
                self.record(arrow, true);
                let dst = self.argument()?;
                self.expect_symbol(";")?;
                Ok(Operation {
                    name: "measure".into(),
                    span,
                    args: vec![src, dst],
                    callee: None,
                })
            }
            (TokenKind::Keyword, "reset") if !in_gate_body => {
                self.operator_keyword("reset")?;
                let arg = self.argument()?;
                self.expect_symbol(";")?;
                Ok(Operation {
                    name: "reset".into(),
                    span,
                    args: vec![arg],
                    callee: None,
                })
            }
            (TokenKind::Keyword, "barrier") => {
                self.operator_keyword("barrier")?;
                let args = self.argument_list()?;
                self.expect_symbol(";")?;
                Ok(Operation {
                    name: "barrier".into(),
                    span,
                    args,
                    callee: None,
                })
            }
            (TokenKind::Keyword, "U") | (TokenKind::Keyword, "CX") | (TokenKind::Identifier, _) => {
                let name = self.bump();
                self.record(name, true);
                if !self.known_gates.contains(&name.text) {
                    return Err(QasmError::UnknownGate {
                        name: name.text.clone(),
                        line: name.span.line,
                        column: name.span.column,
                    });
                }
                if self.peek_is_symbol("(") {
                    self.bump();
                    if !self.peek_is_symbol(")") {
                        self.expression()?;
                        while self.peek_is_symbol(",") {
                            self.bump();
                            self.expression()?;
                        }
                    }
                    self.expect_symbol(")")?;
                }
                let args = self.argument_list()?;
                self.expect_symbol(";")?;
                let callee = self
                    .modules
                    .iter()
                    .any(|m| m.name == name.text)
                    .then(|| name.text.clone());
                Ok(Operation {
                    name: name.text.clone(),
                    span,
                    args,
                    callee,
                })
            }
            _ => Err(self.error(if in_gate_body {
                "gate operation"
            } else {
                "statement"
            })),
        }
    }

    fn argument_list(&mut self) -> Result<Vec<ArgRef>, QasmError> {
        let mut args = vec![self.argument()?];
        while self.peek_is_symbol(",") {
            self.bump();
            args.push(self.argument()?);
        }
        Ok(args)
    }

    /// `id` or `id[int]`.
    fn argument(&mut self) -> Result<ArgRef, QasmError> {
        let name = self.operand_identifier()?;
        if self.peek_is_symbol("[") {
            self.bump();
            self.operand_integer()?;
            self.expect_symbol("]")?;
        }
        Ok(ArgRef::Register(name.text.clone()))
    }

    fn expression(&mut self) -> Result<(), QasmError> {
        self.term()?;
        while self.peek_is_symbol("+") || self.peek_is_symbol("-") {
            let op = self.bump();
            self.record(op, true);
            self.term()?;
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(), QasmError> {
        self.factor()?;
        while self.peek_is_symbol("*") || self.peek_is_symbol("/") {
            let op = self.bump();
            self.record(op, true);
            self.factor()?;
        }
        Ok(())
    }

    fn factor(&mut self) -> Result<(), QasmError> {
        self.unary()?;
        if self.peek_is_symbol("^") {
            let op = self.bump();
            self.record(op, true);
            self.factor()?;
        }
        Ok(())
    }

    fn unary(&mut self) -> Result<(), QasmError> {
        if self.peek_is_symbol("-") {
            let op = self.bump();
            self.record(op, true);
            return self.unary();
        }
        let Some(tok) = self.peek() else {
            return Err(self.error("expression"));
        };
        match tok.kind {
            TokenKind::Integer | TokenKind::Real => {
                self.bump();
                self.record(tok, false);
                Ok(())
            }
            TokenKind::Keyword if tok.text == "pi" => {
                self.bump();
                self.record(tok, false);
                Ok(())
            }
            TokenKind::Identifier if EXPR_FUNCTIONS.contains(&tok.text.as_str()) => {
                self.bump();
                self.record(tok, true);
                self.expect_symbol("(")?;
                self.expression()?;
                self.expect_symbol(")")?;
                Ok(())
            }
            TokenKind::Identifier => {
                self.bump();
                self.record(tok, false);
                Ok(())
            }
            TokenKind::Symbol if tok.text == "(" => {
                self.bump();
                self.expression()?;
                self.expect_symbol(")")?;
                Ok(())
            }
            _ => Err(self.error("expression")),
        }
    }

    // ---- lowering ----

    fn push_operation(&mut self, op: Operation) {
        self.push_statement(StatementSyntax {
            span: op.span,
            form: SyntaxForm::Operation {
                name: op.name,
                args: op.args,
            },
            callee: op.callee,
        });
    }

    fn push_statement(&mut self, syntax: StatementSyntax) {
        let stmt = classify_statement(&syntax, Dialect::OpenQasm2, &self.gates);
        self.statements.push(stmt);
    }
}
