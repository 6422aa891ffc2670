//! Quantum control-flow graph and cyclomatic complexity.
//!
//! Nodes are statements; there are no synthetic entry or exit nodes. Edges:
//!
//! * consecutive items of a block are connected (every exit of the first to
//!   the entry of the second);
//! * a loop header connects to the first body statement, every exit of the
//!   body connects back to the header, and the header itself is the exit of
//!   the loop;
//! * a branch header connects to the first body statement; the header and
//!   the body's exits are the exits of the branch.
//!
//! In [`CfgMode::Fallthrough`] each loop that has a successor also gets a
//! final-iteration edge from the last statement of its body to that
//! successor, so every loop adds 2 to the cyclomatic number instead of 1
//! ([`CfgMode::Classical`]). A trailing loop or branch has no exit edges.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::model::{QModule, QProgram, StatementKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CfgMode {
    #[default]
    Fallthrough,
    Classical,
}

impl CfgMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CfgMode::Fallthrough => "fallthrough",
            CfgMode::Classical => "classical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfgError {
    #[error("line {line}: block header has no body")]
    EmptyBody { line: usize },
    #[error("line {line}: block body extends past the end of its module")]
    MalformedBlock { line: usize },
    #[error("control-flow graph is empty; cyclomatic complexity is undefined")]
    EmptyGraph,
    #[error("no module named `{0}`")]
    UnknownModule(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qcfg {
    /// Statement indices, in program order.
    pub nodes: Vec<usize>,
    /// `(from, to)` statement indices; no duplicates, no self-loops.
    pub edges: Vec<(usize, usize)>,
    pub mode: CfgMode,
}

impl Qcfg {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |(from, _)| *from == node)
            .map(|(_, to)| *to)
    }

    /// Graphviz text, one node per statement labelled `<line>: <kind>`.
    pub fn to_dot(&self, program: &QProgram, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for &n in &self.nodes {
            let s = &program.statements[n];
            writeln!(out, "  n{n} [label=\"{}: {}\"];", s.span.line, s.kind.as_str()).unwrap();
        }
        for (from, to) in &self.edges {
            writeln!(out, "  n{from} -> n{to};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// CFG of the program's top level (the `main` module).
pub fn build_qcfg(program: &QProgram, mode: CfgMode) -> Result<Qcfg, CfgError> {
    build_module_qcfg(program, program.main_module(), mode)
}

pub fn build_named_module_qcfg(program: &QProgram, name: &str, mode: CfgMode) -> Result<Qcfg, CfgError> {
    let module = program
        .module(name)
        .ok_or_else(|| CfgError::UnknownModule(name.to_string()))?;
    build_module_qcfg(program, module, mode)
}

pub fn build_module_qcfg(program: &QProgram, module: &QModule, mode: CfgMode) -> Result<Qcfg, CfgError> {
    let mut builder = Builder {
        program,
        edges: Vec::new(),
        seen: HashSet::new(),
        loop_exit: HashMap::new(),
        loops: Vec::new(),
    };
    let mut top = Vec::new();
    for range in &module.ranges {
        top.extend(builder.items(range.start, range.end)?);
    }
    builder.block(&top)?;
    if mode == CfgMode::Fallthrough {
        for header in std::mem::take(&mut builder.loops) {
            if let Some(&target) = builder.loop_exit.get(&header) {
                let last = header + program.statements[header].body_len;
                builder.edge(last, target);
            }
        }
    }
    Ok(Qcfg {
        nodes: module.indices().collect(),
        edges: builder.edges,
        mode,
    })
}

/// `edges − nodes + 2`.
pub fn cyclomatic(graph: &Qcfg) -> Result<i64, CfgError> {
    if graph.nodes.is_empty() {
        return Err(CfgError::EmptyGraph);
    }
    Ok(graph.edge_count() as i64 - graph.node_count() as i64 + 2)
}

struct Builder<'p> {
    program: &'p QProgram,
    edges: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
    /// Where each loop header's exit edge goes.
    loop_exit: HashMap<usize, usize>,
    loops: Vec<usize>,
}

impl Builder<'_> {
    fn edge(&mut self, from: usize, to: usize) {
        debug_assert_ne!(from, to, "self-loop");
        if self.seen.insert((from, to)) {
            self.edges.push((from, to));
        }
    }

    fn connect(&mut self, exits: &[usize], target: usize) {
        for &x in exits {
            if self.program.statements[x].kind == StatementKind::LoopHeader {
                self.loop_exit.insert(x, target);
            }
            self.edge(x, target);
        }
    }

    /// Top-level items of the statement span `start..end`.
    fn items(&self, start: usize, end: usize) -> Result<Vec<usize>, CfgError> {
        let mut items = Vec::new();
        let mut s = start;
        while s < end {
            let stmt = &self.program.statements[s];
            if stmt.kind.is_header() && stmt.body_len == 0 {
                return Err(CfgError::EmptyBody {
                    line: stmt.span.line,
                });
            }
            let next = s + 1 + stmt.body_len;
            if next > end {
                return Err(CfgError::MalformedBlock {
                    line: stmt.span.line,
                });
            }
            items.push(s);
            s = next;
        }
        Ok(items)
    }

    /// Returns the block's exits.
    fn block(&mut self, items: &[usize]) -> Result<Vec<usize>, CfgError> {
        let mut exits: Vec<usize> = Vec::new();
        for &item in items {
            self.connect(&exits, item);
            exits = self.item(item)?;
        }
        Ok(exits)
    }

    fn item(&mut self, s: usize) -> Result<Vec<usize>, CfgError> {
        let stmt = &self.program.statements[s];
        match stmt.kind {
            StatementKind::LoopHeader | StatementKind::BranchHeader => {
                let is_loop = stmt.kind == StatementKind::LoopHeader;
                let body = self.items(s + 1, s + 1 + stmt.body_len)?;
                self.edge(s, body[0]);
                let body_exits = self.block(&body)?;
                if is_loop {
                    self.connect(&body_exits, s);
                    self.loops.push(s);
                    Ok(vec![s])
                } else {
                    let mut exits = vec![s];
                    exits.extend(body_exits);
                    Ok(exits)
                }
            }
            _ => Ok(vec![s]),
        }
    }
}
