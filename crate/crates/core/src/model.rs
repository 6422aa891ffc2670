//! Dialect-independent program model.
//!
//! Both frontends lower their input into a [`QProgram`]; every metric engine
//! consumes that representation and never looks at dialect syntax again. The
//! one exception is the Halstead token stream, which the frontends classify
//! while they still have syntactic context and store alongside the statements.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Range;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Dialect {
    #[serde(rename = "openqasm2")]
    OpenQasm2,
    #[serde(rename = "qiskit_dialect")]
    QiskitDialect,
}

impl Dialect {
    pub fn as_str(self) -> &'static str {
        match self {
            Dialect::OpenQasm2 => "openqasm2",
            Dialect::QiskitDialect => "qiskit_dialect",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 1-based line, 0-based column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Span {
    pub fn new(line: usize, column: usize) -> Self {
        Span { line, column }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementKind {
    Classical,
    GateApplication,
    Measurement,
    LoopHeader,
    BranchHeader,
}

impl StatementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementKind::Classical => "classical",
            StatementKind::GateApplication => "gate_application",
            StatementKind::Measurement => "measurement",
            StatementKind::LoopHeader => "loop_header",
            StatementKind::BranchHeader => "branch_header",
        }
    }

    pub fn is_header(self) -> bool {
        matches!(self, StatementKind::LoopHeader | StatementKind::BranchHeader)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegisterKind {
    Quantum,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegisterDecl {
    pub name: String,
    pub kind: RegisterKind,
    pub width: usize,
}

/// One executable statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QStatement {
    pub span: Span,
    pub kind: StatementKind,
    /// Lower-cased; present iff `kind` is a gate application.
    pub gate_name: Option<String>,
    pub registers_read: BTreeSet<String>,
    pub registers_written: BTreeSet<String>,
    /// User-defined module invoked by this statement, if any.
    pub callee: Option<String>,
    /// Number of statements (transitively) nested under this header. The body
    /// occupies the indices immediately following the header. Zero for
    /// non-header statements.
    pub body_len: usize,
}

/// A user-defined subroutine, or the synthetic `main` module holding all
/// top-level statements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModule {
    pub name: String,
    /// Formal parameters. Flows through them are counted as call sites, not
    /// as register accesses.
    pub params: Vec<String>,
    /// Statement index ranges, ascending and disjoint. `main` may be split
    /// around subroutine bodies; a subroutine always has a single range.
    pub ranges: Vec<Range<usize>>,
    /// Number of counted source lines carrying this module's statements.
    pub length_loc: usize,
}

pub const MAIN_MODULE: &str = "main";

impl QModule {
    /// Builds a module and derives `length_loc` from the statements it spans.
    pub fn new(
        name: impl Into<String>,
        params: Vec<String>,
        ranges: Vec<Range<usize>>,
        statements: &[QStatement],
    ) -> Self {
        let lines: HashSet<usize> = ranges
            .iter()
            .flat_map(|r| statements[r.clone()].iter().map(|s| s.span.line))
            .collect();
        QModule {
            name: name.into(),
            params,
            ranges,
            length_loc: lines.len(),
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranges.iter().flat_map(|r| r.clone())
    }

    pub fn statement_count(&self) -> usize {
        self.ranges.iter().map(|r| r.len()).sum()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.ranges.iter().any(|r| r.contains(&index))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenRole {
    Operator,
    Operand,
}

/// A source token already classified for Halstead counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalsteadToken {
    pub text: String,
    pub role: TokenRole,
    pub line: usize,
}

impl HalsteadToken {
    pub fn operator(text: impl Into<String>, line: usize) -> Self {
        HalsteadToken {
            text: text.into(),
            role: TokenRole::Operator,
            line,
        }
    }

    pub fn operand(text: impl Into<String>, line: usize) -> Self {
        HalsteadToken {
            text: text.into(),
            role: TokenRole::Operand,
            line,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QProgram {
    pub statements: Vec<QStatement>,
    pub registers: Vec<RegisterDecl>,
    pub modules: Vec<QModule>,
    pub source_dialect: Dialect,
    /// Non-blank, non-comment physical lines.
    pub source_lines_total: usize,
    /// Every operator/operand token of the source, declarations included.
    pub tokens: Vec<HalsteadToken>,
}

impl QProgram {
    pub fn main_module(&self) -> &QModule {
        self.modules
            .iter()
            .find(|m| m.name == MAIN_MODULE)
            .expect("every program has a main module")
    }

    pub fn module(&self, name: &str) -> Option<&QModule> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn register(&self, name: &str) -> Option<&RegisterDecl> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Module owning statement `index`.
    pub fn module_of(&self, index: usize) -> Option<&QModule> {
        self.modules.iter().find(|m| m.contains(index))
    }

    pub fn count_kind(&self, kind: StatementKind) -> usize {
        self.statements.iter().filter(|s| s.kind == kind).count()
    }
}

/// Gate names recognised as quantum gate applications in the Qiskit dialect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSet {
    names: BTreeSet<String>,
}

pub const DEFAULT_GATES: &[&str] = &[
    "x", "y", "z", "h", "s", "t", "sdg", "tdg", "rx", "ry", "rz", "p", "u", "u1", "u2", "u3", "cx",
    "cy", "cz", "cp", "crx", "cry", "crz", "ch", "ccx", "swap", "cswap",
];

pub const MEASUREMENT_NAMES: &[&str] = &["measure", "measure_all"];

impl Default for GateSet {
    fn default() -> Self {
        GateSet::from_names(DEFAULT_GATES.iter().copied())
    }
}

impl GateSet {
    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        GateSet {
            names: names
                .into_iter()
                .map(|n| n.as_ref().trim().to_ascii_lowercase())
                .filter(|n| !n.is_empty())
                .collect(),
        }
    }

    /// Parses a gate-set file: names separated by whitespace or commas,
    /// `#` starts a comment running to end of line.
    pub fn parse(text: &str) -> Self {
        GateSet::from_names(
            text.lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .flat_map(|l| l.split(|c: char| c.is_whitespace() || c == ','))
                .filter(|n| !n.is_empty()),
        )
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(&name.to_ascii_lowercase())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// Number of leading control qubits for controlled gates; 0 otherwise.
pub fn control_count(gate: &str) -> usize {
    match gate {
        "cx" | "cy" | "cz" | "cp" | "crx" | "cry" | "crz" | "ch" | "cswap" | "cu" | "cu1"
        | "cu3" | "csx" => 1,
        "ccx" | "rccx" => 2,
        "c3x" | "rc3x" | "c3sqrtx" => 3,
        "c4x" => 4,
        _ => 0,
    }
}

/// Number of leading angle parameters a Qiskit gate method takes before its
/// qubit arguments.
pub fn parameter_count(gate: &str) -> usize {
    match gate {
        "rx" | "ry" | "rz" | "p" | "u1" | "crx" | "cry" | "crz" | "cp" | "cu1" | "rxx"
        | "rzz" => 1,
        "u2" => 2,
        "u" | "u3" | "cu3" => 3,
        "cu" => 4,
        _ => 0,
    }
}

/// An argument position as seen by the classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgRef {
    /// Root name of a register (or qubit parameter) reference.
    Register(String),
    /// Anything else: literals, arithmetic, calls.
    Value,
}

impl ArgRef {
    fn register(&self) -> Option<&str> {
        match self {
            ArgRef::Register(n) => Some(n),
            ArgRef::Value => None,
        }
    }
}

/// Statement shape handed from a frontend to [`classify_statement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxForm {
    /// Register declarations, circuit construction.
    Declaration,
    /// A named operation applied to arguments: an OpenQASM gate, `measure`,
    /// `reset` or `barrier` statement, or a Qiskit method call on a
    /// circuit-valued receiver.
    Operation { name: String, args: Vec<ArgRef> },
    LoopHeader { reads: Vec<String> },
    BranchHeader { reads: Vec<String> },
    /// Any other classical statement.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementSyntax {
    pub span: Span,
    pub form: SyntaxForm,
    pub callee: Option<String>,
}

/// Destination recorded when a measurement's classical target cannot be
/// resolved to a register name.
pub const UNRESOLVED_CLBITS: &str = "_c";
/// Register Qiskit's `measure_all` creates.
pub const MEASURE_ALL_REGISTER: &str = "meas";

/// Assigns a statement kind and register access sets. Total: anything not
/// recognised is classical.
pub fn classify_statement(syntax: &StatementSyntax, dialect: Dialect, gates: &GateSet) -> QStatement {
    let mut stmt = QStatement {
        span: syntax.span,
        kind: StatementKind::Classical,
        gate_name: None,
        registers_read: BTreeSet::new(),
        registers_written: BTreeSet::new(),
        callee: syntax.callee.clone(),
        body_len: 0,
    };
    match &syntax.form {
        SyntaxForm::Declaration | SyntaxForm::Other => {}
        SyntaxForm::LoopHeader { reads } => {
            stmt.kind = StatementKind::LoopHeader;
            stmt.registers_read.extend(reads.iter().cloned());
        }
        SyntaxForm::BranchHeader { reads } => {
            stmt.kind = StatementKind::BranchHeader;
            stmt.registers_read.extend(reads.iter().cloned());
        }
        SyntaxForm::Operation { name, args } => {
            let name = name.to_ascii_lowercase();
            if MEASUREMENT_NAMES.contains(&name.as_str()) {
                stmt.kind = StatementKind::Measurement;
                classify_measurement(&mut stmt, &name, args);
                return stmt;
            }
            let is_gate = match dialect {
                Dialect::OpenQasm2 => name != "reset" && name != "barrier",
                Dialect::QiskitDialect => gates.contains(&name),
            };
            if !is_gate {
                return stmt;
            }
            let qubits = match dialect {
                Dialect::OpenQasm2 => &args[..],
                Dialect::QiskitDialect => &args[parameter_count(&name).min(args.len())..],
            };
            let controls = control_count(&name);
            for (i, arg) in qubits.iter().enumerate() {
                if let Some(reg) = arg.register() {
                    stmt.registers_written.insert(reg.to_string());
                    if i < controls {
                        stmt.registers_read.insert(reg.to_string());
                    }
                }
            }
            stmt.kind = StatementKind::GateApplication;
            stmt.gate_name = Some(name);
        }
    }
    stmt
}

fn classify_measurement(stmt: &mut QStatement, name: &str, args: &[ArgRef]) {
    if name == "measure_all" {
        stmt.registers_read
            .extend(args.iter().filter_map(ArgRef::register).map(str::to_string));
        stmt.registers_written.insert(MEASURE_ALL_REGISTER.to_string());
        return;
    }
    let (dest, sources) = match args.split_last() {
        Some((dest, sources)) => (dest.register(), sources),
        None => (None, args),
    };
    stmt.registers_read
        .extend(sources.iter().filter_map(ArgRef::register).map(str::to_string));
    stmt.registers_written
        .insert(dest.unwrap_or(UNRESOLVED_CLBITS).to_string());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(name: &str, args: &[&str]) -> StatementSyntax {
        StatementSyntax {
            span: Span::new(1, 0),
            form: SyntaxForm::Operation {
                name: name.to_string(),
                args: args
                    .iter()
                    .map(|a| {
                        if a.chars().all(|c| c.is_ascii_digit()) {
                            ArgRef::Value
                        } else {
                            ArgRef::Register(a.to_string())
                        }
                    })
                    .collect(),
            },
            callee: None,
        }
    }

    #[test]
    fn qiskit_gate_call_is_gate_application() {
        let s = classify_statement(&op("h", &["q"]), Dialect::QiskitDialect, &GateSet::default());
        assert_eq!(s.kind, StatementKind::GateApplication);
        assert_eq!(s.gate_name.as_deref(), Some("h"));
        assert!(s.registers_read.is_empty());
        assert_eq!(s.registers_written.iter().collect::<Vec<_>>(), ["q"]);
    }

    #[test]
    fn gate_name_is_lowercased() {
        let s = classify_statement(&op("CX", &["a", "b"]), Dialect::OpenQasm2, &GateSet::default());
        assert_eq!(s.gate_name.as_deref(), Some("cx"));
        assert!(s.registers_read.contains("a"));
        assert!(!s.registers_read.contains("b"));
    }

    #[test]
    fn measurement_reads_source_writes_destination() {
        let s = classify_statement(
            &op("measure", &["q", "c"]),
            Dialect::QiskitDialect,
            &GateSet::default(),
        );
        assert_eq!(s.kind, StatementKind::Measurement);
        assert!(s.registers_read.contains("q"));
        assert!(s.registers_written.contains("c"));
        assert!(s.gate_name.is_none());
    }

    #[test]
    fn barrier_and_reset_are_classical() {
        for name in ["barrier", "reset"] {
            for dialect in [Dialect::OpenQasm2, Dialect::QiskitDialect] {
                let s = classify_statement(&op(name, &["q"]), dialect, &GateSet::default());
                assert_eq!(s.kind, StatementKind::Classical, "{name} {dialect}");
            }
        }
    }

    #[test]
    fn unknown_qiskit_method_is_classical() {
        let s = classify_statement(&op("draw", &[]), Dialect::QiskitDialect, &GateSet::default());
        assert_eq!(s.kind, StatementKind::Classical);
    }

    #[test]
    fn rotation_parameters_are_not_registers() {
        let s = classify_statement(
            &op("crz", &["theta", "q", "r"]),
            Dialect::QiskitDialect,
            &GateSet::default(),
        );
        assert_eq!(s.registers_written.iter().collect::<Vec<_>>(), ["q", "r"]);
        assert_eq!(s.registers_read.iter().collect::<Vec<_>>(), ["q"]);
    }

    #[test]
    fn unresolved_measure_destination_falls_back() {
        let s = classify_statement(&op("measure", &["q", "0"]), Dialect::QiskitDialect, &GateSet::default());
        assert!(s.registers_written.contains(UNRESOLVED_CLBITS));
    }

    #[test]
    fn gate_set_file_parsing() {
        let set = GateSet::parse("# custom\nh, x\n  SX  # root-x\n");
        assert!(set.contains("h") && set.contains("x") && set.contains("sx"));
        assert!(!set.contains("cx"));
    }
}
