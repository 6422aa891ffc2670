//! Lowering from the dialect's block tree to a [`QProgram`].
//!
//! Receivers are recognised as circuits by a small dataflow pass: a name is
//! circuit-valued if it is assigned from `QuantumCircuit(...)`, aliased from
//! another circuit-valued name, or is a function parameter bound to a
//! circuit at some call site. The pass iterates to a fixpoint.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;

use super::parser::{Expr, PyDialectStmt, StmtParts};
use super::QiskitError;
use crate::model::{
    classify_statement, ArgRef, Dialect, GateSet, HalsteadToken, QModule, QProgram, QStatement,
    RegisterDecl, RegisterKind, Span, StatementSyntax, SyntaxForm, MAIN_MODULE,
};

const QUANTUM_REGISTER: &str = "QuantumRegister";
const CLASSICAL_REGISTER: &str = "ClassicalRegister";
const QUANTUM_CIRCUIT: &str = "QuantumCircuit";

/// `None` is the top level; `Some(f)` is the body of `def f`.
type Scope = Option<String>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct CircuitRegisters {
    quantum: Vec<String>,
    classical: Vec<String>,
}

struct FunctionInfo {
    params: Vec<String>,
    locals: HashSet<String>,
}

pub fn lower(
    block: &[PyDialectStmt],
    source_lines: usize,
    gates: &GateSet,
) -> Result<QProgram, QiskitError> {
    let functions = collect_functions(block)?;
    let mut ctx = Lowering {
        gates,
        functions,
        registers: Vec::new(),
        synthesized: HashMap::new(),
        circuits: HashMap::new(),
        known_registers: HashSet::new(),
        statements: Vec::new(),
        tokens: Vec::new(),
    };
    ctx.declare_registers(block, &None)?;
    ctx.propagate_circuits(block);
    ctx.collect_register_refs(block, &None);

    let mut main_ranges: Vec<Range<usize>> = Vec::new();
    let mut modules = Vec::new();
    let mut main_start = 0;
    for stmt in block {
        if let StmtParts::Def { name, params } = &stmt.parts {
            let start = ctx.statements.len();
            if main_start < start {
                main_ranges.push(main_start..start);
            }
            ctx.def_tokens(stmt.line, name, params);
            let scope = Some(name.clone());
            for inner in &stmt.body {
                ctx.emit(inner, &scope);
            }
            let end = ctx.statements.len();
            main_start = end;
            modules.push(QModule::new(
                name.clone(),
                params.clone(),
                std::iter::once(start..end).collect(),
                &ctx.statements,
            ));
        } else {
            ctx.emit(stmt, &None);
        }
    }
    if main_start < ctx.statements.len() {
        main_ranges.push(main_start..ctx.statements.len());
    }
    let main = QModule::new(MAIN_MODULE, Vec::new(), main_ranges, &ctx.statements);
    modules.insert(0, main);

    Ok(QProgram {
        statements: ctx.statements,
        registers: ctx.registers,
        modules,
        source_dialect: Dialect::QiskitDialect,
        source_lines_total: source_lines,
        tokens: ctx.tokens,
    })
}

fn collect_functions(block: &[PyDialectStmt]) -> Result<HashMap<String, FunctionInfo>, QiskitError> {
    fn reject_nested_defs(stmts: &[PyDialectStmt]) -> Result<(), QiskitError> {
        for s in stmts {
            if matches!(s.parts, StmtParts::Def { .. }) {
                return Err(QiskitError::UnsupportedSyntax {
                    line: s.line,
                    column: s.column,
                    construct: "nested function definition".into(),
                });
            }
            reject_nested_defs(&s.body)?;
        }
        Ok(())
    }
    fn locals_of(stmts: &[PyDialectStmt], out: &mut HashSet<String>) {
        for s in stmts {
            match &s.parts {
                StmtParts::Assign { target, .. } => {
                    out.insert(target.clone());
                }
                StmtParts::For { var, .. } => {
                    out.insert(var.clone());
                }
                _ => {}
            }
            locals_of(&s.body, out);
        }
    }

    let mut functions = HashMap::new();
    for s in block {
        if let StmtParts::Def { name, params } = &s.parts {
            reject_nested_defs(&s.body)?;
            if name == MAIN_MODULE {
                return Err(QiskitError::UnsupportedSyntax {
                    line: s.line,
                    column: s.column,
                    construct: format!("function named `{MAIN_MODULE}`"),
                });
            }
            if functions.contains_key(name) {
                return Err(QiskitError::UnsupportedSyntax {
                    line: s.line,
                    column: s.column,
                    construct: format!("redefinition of `{name}`"),
                });
            }
            let mut locals: HashSet<String> = params.iter().cloned().collect();
            locals_of(&s.body, &mut locals);
            functions.insert(
                name.clone(),
                FunctionInfo {
                    params: params.clone(),
                    locals,
                },
            );
        } else {
            reject_nested_defs(&s.body)?;
        }
    }
    Ok(functions)
}

/// Name of a constructor call: `QuantumRegister(..)` or `qiskit.QuantumRegister(..)`.
fn constructor_name(expr: &Expr) -> Option<&str> {
    match expr {
        Expr::Call { .. } => expr.call_name(),
        _ => None,
    }
}

fn literal_int(expr: &Expr) -> Option<usize> {
    match expr {
        Expr::Int(text) => text.parse().ok(),
        _ => None,
    }
}

struct Lowering<'g> {
    gates: &'g GateSet,
    functions: HashMap<String, FunctionInfo>,
    registers: Vec<RegisterDecl>,
    /// Registers synthesized by `QuantumCircuit(n, m)`, keyed by statement line.
    synthesized: HashMap<usize, CircuitRegisters>,
    circuits: HashMap<(Scope, String), CircuitRegisters>,
    known_registers: HashSet<String>,
    statements: Vec<QStatement>,
    tokens: Vec<HalsteadToken>,
}

impl Lowering<'_> {
    fn resolve(&self, scope: &Scope, name: &str) -> (Scope, String) {
        match scope {
            Some(f) if self.functions.get(f).is_some_and(|info| info.locals.contains(name)) => {
                (scope.clone(), name.to_string())
            }
            _ => (None, name.to_string()),
        }
    }

    fn circuit(&self, scope: &Scope, name: &str) -> Option<&CircuitRegisters> {
        self.circuits.get(&self.resolve(scope, name))
    }

    fn unique_register_name(&self, base: &str) -> String {
        if self.registers.iter().all(|r| r.name != base) {
            return base.to_string();
        }
        (2..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.registers.iter().all(|r| &r.name != n))
            .expect("unbounded search")
    }

    fn push_register(&mut self, name: String, kind: RegisterKind, width: usize, line: usize) -> Result<(), QiskitError> {
        if self.registers.iter().any(|r| r.name == name) {
            return Err(QiskitError::DuplicateRegister { name, line });
        }
        self.registers.push(RegisterDecl { name, kind, width });
        Ok(())
    }

    /// Pass 1: register declarations, in program order.
    fn declare_registers(&mut self, block: &[PyDialectStmt], scope: &Scope) -> Result<(), QiskitError> {
        for stmt in block {
            if let StmtParts::Assign { target, value } = &stmt.parts {
                match constructor_name(value) {
                    Some(ctor @ (QUANTUM_REGISTER | CLASSICAL_REGISTER)) => {
                        let width = value
                            .positional_args()
                            .first()
                            .and_then(|a| literal_int(a))
                            .filter(|&w| w >= 1)
                            .ok_or_else(|| QiskitError::UnsupportedSyntax {
                                line: stmt.line,
                                column: stmt.column,
                                construct: "register width must be a positive integer literal".into(),
                            })?;
                        let kind = if ctor == QUANTUM_REGISTER {
                            RegisterKind::Quantum
                        } else {
                            RegisterKind::Classical
                        };
                        self.push_register(target.clone(), kind, width, stmt.line)?;
                    }
                    Some(QUANTUM_CIRCUIT) => {
                        let args = value.positional_args();
                        let widths: Vec<usize> = args.iter().map_while(|a| literal_int(a)).collect();
                        if !widths.is_empty() {
                            let mut regs = CircuitRegisters::default();
                            for (width, kind, base) in widths
                                .iter()
                                .zip([(RegisterKind::Quantum, "_q"), (RegisterKind::Classical, "_c")])
                                .map(|(w, (k, b))| (*w, k, b))
                                .filter(|(w, _, _)| *w >= 1)
                            {
                                let name = self.unique_register_name(base);
                                self.push_register(name.clone(), kind, width, stmt.line)?;
                                match kind {
                                    RegisterKind::Quantum => regs.quantum.push(name),
                                    RegisterKind::Classical => regs.classical.push(name),
                                }
                            }
                            self.synthesized.insert(stmt.line, regs);
                        }
                    }
                    _ => {}
                }
            }
            let inner_scope = match &stmt.parts {
                StmtParts::Def { name, .. } => Some(name.clone()),
                _ => scope.clone(),
            };
            self.declare_registers(&stmt.body, &inner_scope)?;
        }
        Ok(())
    }

    fn circuit_registers_for(&self, line: usize, args: &[&Expr]) -> CircuitRegisters {
        if let Some(regs) = self.synthesized.get(&line) {
            return regs.clone();
        }
        let mut regs = CircuitRegisters::default();
        for name in args.iter().filter_map(|a| match a {
            Expr::Name(n) => Some(n),
            _ => None,
        }) {
            match self.registers.iter().find(|r| &r.name == name).map(|r| r.kind) {
                Some(RegisterKind::Quantum) => regs.quantum.push(name.clone()),
                Some(RegisterKind::Classical) => regs.classical.push(name.clone()),
                None => {}
            }
        }
        regs
    }

    /// Pass 2: circuit-valued names, to a fixpoint.
    fn propagate_circuits(&mut self, block: &[PyDialectStmt]) {
        let mut flat = Vec::new();
        flatten(block, &None, &mut flat);
        loop {
            let mut changed = false;
            for (stmt, scope) in &flat {
                let mut bind = |this: &mut Self, key: (Scope, String), regs: CircuitRegisters| {
                    if let std::collections::hash_map::Entry::Vacant(e) = this.circuits.entry(key) {
                        e.insert(regs);
                        changed = true;
                    }
                };
                if let StmtParts::Assign { target, value } = &stmt.parts {
                    let key = self.resolve(scope, target);
                    if constructor_name(value) == Some(QUANTUM_CIRCUIT) {
                        let regs = self.circuit_registers_for(stmt.line, &value.positional_args());
                        bind(self, key, regs);
                    } else if let Expr::Name(src) = value {
                        if let Some(regs) = self.circuit(scope, src).cloned() {
                            bind(self, key, regs);
                        }
                    }
                }
                let mut bindings = Vec::new();
                for expr in stmt_exprs(&stmt.parts) {
                    expr.walk(&mut |e| {
                        let Expr::Call { func, .. } = e else { return };
                        let Expr::Name(f) = func.as_ref() else { return };
                        let Some(info) = self.functions.get(f) else { return };
                        for (param, arg) in info.params.iter().zip(e.positional_args()) {
                            if let Expr::Name(n) = arg {
                                if let Some(regs) = self.circuit(scope, n) {
                                    bindings.push(((Some(f.clone()), param.clone()), regs.clone()));
                                }
                            }
                        }
                    });
                }
                for (key, regs) in bindings {
                    bind(self, key, regs);
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// `(method, args)` when `expr` is a method call on a circuit.
    fn circuit_operation(&self, expr: &Expr, scope: &Scope) -> Option<(String, Vec<ArgRef>)> {
        let Expr::Call { func, .. } = expr else {
            return None;
        };
        let Expr::Attribute(receiver, method) = func.as_ref() else {
            return None;
        };
        let Expr::Name(receiver) = receiver.as_ref() else {
            return None;
        };
        let regs = self.circuit(scope, receiver)?;
        let method_lc = method.to_ascii_lowercase();
        if method_lc == "measure_all" {
            let args = regs.quantum.iter().cloned().map(ArgRef::Register).collect();
            return Some((method.clone(), args));
        }
        let positional = expr.positional_args();
        let last = positional.len().saturating_sub(1);
        let args = positional
            .iter()
            .enumerate()
            .map(|(i, arg)| {
                if let Some(root) = arg.root_name() {
                    return ArgRef::Register(root.to_string());
                }
                if literal_int(arg).is_none() {
                    return ArgRef::Value;
                }
                let default = if method_lc == "measure" && i == last && i > 0 {
                    regs.classical.first()
                } else {
                    regs.quantum.first()
                };
                default.cloned().map_or(ArgRef::Value, ArgRef::Register)
            })
            .collect();
        Some((method.clone(), args))
    }

    /// Pass 3: names used as registers anywhere, so branch and loop
    /// conditions can tell registers from plain variables.
    fn collect_register_refs(&mut self, block: &[PyDialectStmt], scope: &Scope) {
        self.known_registers
            .extend(self.registers.iter().map(|r| r.name.clone()));
        let mut flat = Vec::new();
        flatten(block, scope, &mut flat);
        for (stmt, scope) in flat {
            let expr = match &stmt.parts {
                StmtParts::Expr(e) | StmtParts::Assign { value: e, .. } => e,
                _ => continue,
            };
            if let Some((_, args)) = self.circuit_operation(expr, &scope) {
                for arg in args {
                    if let ArgRef::Register(n) = arg {
                        self.known_registers.insert(n);
                    }
                }
            }
        }
    }

    fn condition_reads(&self, expr: &Expr) -> Vec<String> {
        let mut names = BTreeSet::new();
        expr.walk(&mut |e| {
            if let Expr::Name(n) = e {
                if self.known_registers.contains(n) {
                    names.insert(n.clone());
                }
            }
        });
        names.into_iter().collect()
    }

    fn callee_of(&self, parts: &StmtParts) -> Option<String> {
        let mut found = None;
        for expr in stmt_exprs(parts) {
            expr.walk(&mut |e| {
                if found.is_some() {
                    return;
                }
                if let Expr::Call { func, .. } = e {
                    if let Expr::Name(f) = func.as_ref() {
                        if self.functions.contains_key(f) {
                            found = Some(f.clone());
                        }
                    }
                }
            });
        }
        found
    }

    /// Pass 4: statements and tokens, in program order.
    fn emit(&mut self, stmt: &PyDialectStmt, scope: &Scope) {
        let span = Span::new(stmt.line, stmt.column);
        let callee = self.callee_of(&stmt.parts);
        let form = match &stmt.parts {
            StmtParts::For { var, range } => {
                self.tokens.push(HalsteadToken::operator("for", stmt.line));
                self.tokens.push(HalsteadToken::operand(var.clone(), stmt.line));
                self.tokens.push(HalsteadToken::operator("in", stmt.line));
                expr_tokens(range, stmt.line, &mut self.tokens);
                SyntaxForm::LoopHeader {
                    reads: self.condition_reads(range),
                }
            }
            StmtParts::If { condition } => {
                self.tokens.push(HalsteadToken::operator("if", stmt.line));
                expr_tokens(condition, stmt.line, &mut self.tokens);
                SyntaxForm::BranchHeader {
                    reads: self.condition_reads(condition),
                }
            }
            StmtParts::Assign { target, value } => {
                self.tokens.push(HalsteadToken::operand(target.clone(), stmt.line));
                self.tokens.push(HalsteadToken::operator("=", stmt.line));
                expr_tokens(value, stmt.line, &mut self.tokens);
                match constructor_name(value) {
                    Some(QUANTUM_REGISTER | CLASSICAL_REGISTER | QUANTUM_CIRCUIT) => SyntaxForm::Declaration,
                    _ => self.operation_form(value, scope),
                }
            }
            StmtParts::Expr(expr) => {
                expr_tokens(expr, stmt.line, &mut self.tokens);
                self.operation_form(expr, scope)
            }
            StmtParts::Print(expr) => {
                expr_tokens(expr, stmt.line, &mut self.tokens);
                SyntaxForm::Other
            }
            StmtParts::Def { .. } => unreachable!("definitions are only lowered at top level"),
        };
        let syntax = StatementSyntax { span, form, callee };
        let header = self.statements.len();
        self.statements
            .push(classify_statement(&syntax, Dialect::QiskitDialect, self.gates));
        for inner in &stmt.body {
            self.emit(inner, scope);
        }
        self.statements[header].body_len = self.statements.len() - header - 1;
    }

    fn operation_form(&self, expr: &Expr, scope: &Scope) -> SyntaxForm {
        match self.circuit_operation(expr, scope) {
            Some((name, args)) => SyntaxForm::Operation { name, args },
            None => SyntaxForm::Other,
        }
    }

    fn def_tokens(&mut self, line: usize, name: &str, params: &[String]) {
        self.tokens.push(HalsteadToken::operator("def", line));
        self.tokens.push(HalsteadToken::operator(name, line));
        for p in params {
            self.tokens.push(HalsteadToken::operand(p.clone(), line));
        }
    }
}

fn flatten<'a>(block: &'a [PyDialectStmt], scope: &Scope, out: &mut Vec<(&'a PyDialectStmt, Scope)>) {
    for stmt in block {
        out.push((stmt, scope.clone()));
        let inner = match &stmt.parts {
            StmtParts::Def { name, .. } => Some(name.clone()),
            _ => scope.clone(),
        };
        flatten(&stmt.body, &inner, out);
    }
}

fn stmt_exprs(parts: &StmtParts) -> Vec<&Expr> {
    match parts {
        StmtParts::Assign { value, .. } => vec![value],
        StmtParts::Expr(e) | StmtParts::Print(e) => vec![e],
        StmtParts::For { range, .. } => vec![range],
        StmtParts::If { condition } => vec![condition],
        StmtParts::Def { .. } => Vec::new(),
    }
}

/// Operators: called names, `=` of keyword arguments, arithmetic and
/// comparison operators. Operands: every other name and literal. Dots,
/// brackets and commas are not counted.
fn expr_tokens(expr: &Expr, line: usize, out: &mut Vec<HalsteadToken>) {
    match expr {
        Expr::Name(t) | Expr::Int(t) | Expr::Float(t) | Expr::Str(t) | Expr::Constant(t) => {
            out.push(HalsteadToken::operand(t.clone(), line))
        }
        Expr::Attribute(base, attr) => {
            expr_tokens(base, line, out);
            out.push(HalsteadToken::operand(attr.clone(), line));
        }
        Expr::Call { func, args } => {
            match func.as_ref() {
                Expr::Name(n) => out.push(HalsteadToken::operator(n.clone(), line)),
                Expr::Attribute(base, method) => {
                    expr_tokens(base, line, out);
                    out.push(HalsteadToken::operator(method.clone(), line));
                }
                other => expr_tokens(other, line, out),
            }
            for arg in args {
                if let Some(k) = &arg.keyword {
                    out.push(HalsteadToken::operand(k.clone(), line));
                    out.push(HalsteadToken::operator("=", line));
                }
                expr_tokens(&arg.value, line, out);
            }
        }
        Expr::Subscript(base, index) => {
            expr_tokens(base, line, out);
            expr_tokens(index, line, out);
        }
        Expr::Binary(l, op, r) => {
            expr_tokens(l, line, out);
            out.push(HalsteadToken::operator(op.clone(), line));
            expr_tokens(r, line, out);
        }
        Expr::Negate(e) => {
            out.push(HalsteadToken::operator("-", line));
            expr_tokens(e, line, out);
        }
    }
}
