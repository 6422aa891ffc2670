//! proptest strategies for random programs and design documents.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::select;

pub const QUBITS: usize = 3;

#[derive(Debug, Clone)]
pub enum GenStmt {
    Gate { name: &'static str, qubits: Vec<usize> },
    Rotation { name: &'static str, angle: u8, qubit: usize },
    Measure { qubit: usize, bit: usize },
    Classical(u8),
    Call(usize),
    Loop(Vec<GenStmt>),
    Branch(Vec<GenStmt>),
}

impl GenStmt {
    pub fn statement_count(&self) -> usize {
        match self {
            GenStmt::Loop(b) | GenStmt::Branch(b) => 1 + b.iter().map(Self::statement_count).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn loops(&self) -> usize {
        match self {
            GenStmt::Loop(b) => 1 + b.iter().map(Self::loops).sum::<usize>(),
            GenStmt::Branch(b) => b.iter().map(Self::loops).sum(),
            _ => 0,
        }
    }

    pub fn branches(&self) -> usize {
        match self {
            GenStmt::Branch(b) => 1 + b.iter().map(Self::branches).sum::<usize>(),
            GenStmt::Loop(b) => b.iter().map(Self::branches).sum(),
            _ => 0,
        }
    }
}

/// A Qiskit-dialect program: a fixed four-line prelude, optional helper
/// functions, the generated body and a closing `print`, so the top level
/// never ends in a block.
#[derive(Debug, Clone)]
pub struct GenProgram {
    pub functions: Vec<Vec<GenStmt>>,
    pub body: Vec<GenStmt>,
}

pub const PRELUDE_STATEMENTS: usize = 4;

impl GenProgram {
    pub fn loops(&self) -> usize {
        self.body.iter().map(GenStmt::loops).sum()
    }

    pub fn branches(&self) -> usize {
        self.body.iter().map(GenStmt::branches).sum()
    }

    /// Statements of the main module.
    pub fn main_statements(&self) -> usize {
        PRELUDE_STATEMENTS + self.body.iter().map(GenStmt::statement_count).sum::<usize>() + 1
    }

    pub fn total_statements(&self) -> usize {
        self.main_statements()
            + self
                .functions
                .iter()
                .flatten()
                .map(GenStmt::statement_count)
                .sum::<usize>()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, f) in self.functions.iter().enumerate() {
            out.push_str(&format!("def f{k}(circ):\n"));
            for s in f {
                render_stmt(s, 1, "circ", self.functions.len(), &mut out);
            }
        }
        out.push_str("q = QuantumRegister(3)\nc = ClassicalRegister(3)\ncircuit = QuantumCircuit(q, c)\nflag = 1\n");
        for s in &self.body {
            render_stmt(s, 0, "circuit", self.functions.len(), &mut out);
        }
        out.push_str("print(flag)\n");
        out
    }
}

fn render_stmt(s: &GenStmt, depth: usize, circuit: &str, functions: usize, out: &mut String) {
    let pad = "    ".repeat(depth);
    let line = match s {
        GenStmt::Gate { name, qubits } => {
            let args: Vec<String> = qubits.iter().map(|q| format!("q[{q}]")).collect();
            format!("{circuit}.{name}({})", args.join(", "))
        }
        GenStmt::Rotation { name, angle, qubit } => {
            format!("{circuit}.{name}(0.{angle} * 3, q[{qubit}])")
        }
        GenStmt::Measure { qubit, bit } => format!("{circuit}.measure(q[{qubit}], c[{bit}])"),
        GenStmt::Classical(n) => format!("flag = flag + {n}"),
        GenStmt::Call(k) if functions > 0 => format!("f{}({circuit})", k % functions),
        GenStmt::Call(_) => "flag = flag - 1".to_string(),
        GenStmt::Loop(body) | GenStmt::Branch(body) => {
            let header = if matches!(s, GenStmt::Loop(_)) {
                format!("{pad}for i{depth} in range(2):\n")
            } else {
                format!("{pad}if flag == {depth}:\n")
            };
            out.push_str(&header);
            for inner in body {
                render_stmt(inner, depth + 1, circuit, functions, out);
            }
            return;
        }
    };
    out.push_str(&pad);
    out.push_str(&line);
    out.push('\n');
}

fn distinct_qubits(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..QUBITS).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| v[..n].to_vec())
}

pub fn simple_stmt() -> impl Strategy<Value = GenStmt> {
    prop_oneof![
        3 => select(&["h", "x", "y", "z", "s", "t"][..])
            .prop_flat_map(|name| distinct_qubits(1).prop_map(move |qubits| GenStmt::Gate { name, qubits })),
        2 => select(&["cx", "cz", "swap"][..])
            .prop_flat_map(|name| distinct_qubits(2).prop_map(move |qubits| GenStmt::Gate { name, qubits })),
        1 => distinct_qubits(3).prop_map(|qubits| GenStmt::Gate { name: "ccx", qubits }),
        1 => (select(&["rx", "ry", "rz"][..]), 0u8..10, 0..QUBITS)
            .prop_map(|(name, angle, qubit)| GenStmt::Rotation { name, angle, qubit }),
        2 => (0..QUBITS, 0..QUBITS).prop_map(|(qubit, bit)| GenStmt::Measure { qubit, bit }),
        2 => (0u8..9).prop_map(GenStmt::Classical),
        1 => (0usize..3).prop_map(GenStmt::Call),
    ]
}

pub fn stmt() -> impl Strategy<Value = GenStmt> {
    simple_stmt().prop_recursive(3, 20, 4, |inner| {
        prop_oneof![
            vec(inner.clone(), 1..4).prop_map(GenStmt::Loop),
            vec(inner, 1..4).prop_map(GenStmt::Branch),
        ]
    })
}

fn function_body() -> impl Strategy<Value = Vec<GenStmt>> {
    vec(
        simple_stmt().prop_filter("no calls inside helpers", |s| !matches!(s, GenStmt::Call(_))),
        1..4,
    )
}

/// Programs of at most 40 statements.
pub fn program() -> impl Strategy<Value = GenProgram> {
    (vec(function_body(), 0..3), vec(stmt(), 0..10))
        .prop_map(|(functions, body)| GenProgram { functions, body })
        .prop_filter("at most 40 statements", |p| p.total_statements() <= 40)
}

/// Programs without loops, branches or helper functions.
pub fn straight_line_program() -> impl Strategy<Value = GenProgram> {
    vec(simple_stmt(), 0..30).prop_map(|body| GenProgram {
        functions: Vec::new(),
        body,
    })
}

/// Small branch-only programs (at most 8 statements in main).
pub fn acyclic_program() -> impl Strategy<Value = GenProgram> {
    let branchy = simple_stmt().prop_recursive(2, 4, 2, |inner| vec(inner, 1..3).prop_map(GenStmt::Branch));
    vec(branchy, 0..3)
        .prop_map(|body| GenProgram {
            functions: Vec::new(),
            body,
        })
        .prop_filter("at most 8 statements", |p| p.main_statements() <= 8)
}

/// OpenQASM programs: gates, measurements and conditioned gates.
pub fn qasm_program() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        3 => (select(&["h", "x", "z", "t"][..]), 0..QUBITS).prop_map(|(g, a)| format!("{g} q[{a}];")),
        2 => distinct_qubits(2).prop_map(|v| format!("cx q[{}],q[{}];", v[0], v[1])),
        1 => (0u8..9, 0..QUBITS).prop_map(|(n, a)| format!("rz(pi/{} - 0.5) q[{a}];", n + 1)),
        2 => (0..QUBITS).prop_map(|a| format!("measure q[{a}] -> c[{a}];")),
        1 => (0u8..8, 0..QUBITS).prop_map(|(n, a)| format!("if(c=={n}) x q[{a}];")),
        1 => Just("barrier q;".to_string()),
    ];
    vec(line, 0..25).prop_map(|lines| {
        let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n");
        for l in lines {
            s.push_str(&l);
            s.push('\n');
        }
        s
    })
}

#[derive(Debug, Clone)]
pub struct GenArch {
    pub quantum: Vec<bool>,
    pub connectors: Vec<(usize, usize)>,
}

impl GenArch {
    pub fn render(&self) -> String {
        let comps: Vec<String> = self
            .quantum
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let kind = if *q { "quantum" } else { "classical" };
                format!("    {{ \"name\": \"K{i}\", \"kind\": \"{kind}\" }}")
            })
            .collect();
        let conns: Vec<String> = self
            .connectors
            .iter()
            .map(|(a, b)| format!("    {{ \"from\": \"K{a}\", \"to\": \"K{b}\" }}"))
            .collect();
        format!(
            "{{\n  \"components\": [\n{}\n  ],\n  \"connectors\": [\n{}\n  ]\n}}\n",
            comps.join(",\n"),
            conns.join(",\n")
        )
    }
}

pub fn arch_document() -> impl Strategy<Value = GenArch> {
    vec(any::<bool>(), 0..8).prop_flat_map(|quantum| {
        let n = quantum.len();
        let connectors = if n == 0 {
            Just(Vec::new()).boxed()
        } else {
            vec((0..n, 0..n), 0..10).boxed()
        };
        (Just(quantum), connectors).prop_map(|(quantum, connectors)| GenArch { quantum, connectors })
    })
}

/// Pattern record documents: (quantum flag, instance count) per type.
pub fn patterns_document() -> impl Strategy<Value = (Vec<(bool, usize)>, String)> {
    vec((any::<bool>(), 1usize..5), 0..7).prop_map(|entries| {
        let items: Vec<String> = entries
            .iter()
            .enumerate()
            .map(|(i, (q, n))| {
                let inst: Vec<String> = (0..*n).map(|k| format!("\"p{i}_{k}\"")).collect();
                format!(
                    "{{ \"type_name\": \"Pattern-{i}\", \"quantum\": {q}, \"instances\": [{}] }}",
                    inst.join(", ")
                )
            })
            .collect();
        let text = format!("{{ \"patterns\": [{}] }}", items.join(", "));
        (entries, text)
    })
}

/// Q-UML documents built from per-class quantum flags of members.
pub fn quml_document() -> impl Strategy<Value = String> {
    let member_list = || vec(any::<bool>(), 0..4);
    let class = (any::<bool>(), member_list(), member_list(), member_list(), vec((any::<bool>(), any::<bool>()), 0..4));
    vec(class, 0..4).prop_map(|classes| {
        let members = |flags: &[bool], prefix: &str| -> String {
            let v: Vec<String> = flags
                .iter()
                .enumerate()
                .map(|(i, q)| format!("{{ \"name\": \"{prefix}{i}\", \"quantum\": {q} }}"))
                .collect();
            v.join(", ")
        };
        let items: Vec<String> = classes
            .iter()
            .enumerate()
            .map(|(i, (q, attrs, methods, ifaces, elements))| {
                let els: Vec<String> = elements
                    .iter()
                    .enumerate()
                    .map(|(k, (op, eq))| {
                        let kind = if *op { "operation" } else { "variable" };
                        format!("{{ \"name\": \"e{k}\", \"kind\": \"{kind}\", \"quantum\": {eq} }}")
                    })
                    .collect();
                format!(
                    "{{ \"name\": \"C{i}\", \"quantum\": {q}, \"attributes\": [{}], \"methods\": [{}], \"interfaces\": [{}], \"elements\": [{}] }}",
                    members(attrs, "a"),
                    members(methods, "m"),
                    members(ifaces, "i"),
                    els.join(", ")
                )
            })
            .collect();
        format!("{{ \"classes\": [{}] }}", items.join(", "))
    })
}
