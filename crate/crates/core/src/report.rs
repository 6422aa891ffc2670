//! Per-file analysis, corpus aggregation and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::cfg::{build_qcfg, cyclomatic, CfgError, CfgMode};
use crate::design::{
    compute_delta, compute_gamma, compute_theta, parse_design_document, DeltaMetrics, DesignFormat,
    DesignModel, GammaMetrics, ThetaMetrics,
};
use crate::metrics::{
    compute_halstead, compute_information_flow, compute_loc_metrics, HalsteadMetrics,
    InfoFlowMetrics, LocMetrics,
};
use crate::model::{Dialect, GateSet, QProgram};
use crate::qasm::parse_qasm_source;
use crate::qiskit::parse_qiskit_dialect_with;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum InputKind {
    Code(Dialect),
    Design(DesignFormat),
}

impl InputKind {
    /// Kind implied by the file name: `.qasm`, `.py`, `.arch.json`,
    /// `.patterns.json` or `.quml.json`.
    pub fn from_path(path: &Path) -> Option<Self> {
        if let Some(f) = DesignFormat::from_path(path) {
            return Some(InputKind::Design(f));
        }
        match path.extension()?.to_str()? {
            "qasm" => Some(InputKind::Code(Dialect::OpenQasm2)),
            "py" => Some(InputKind::Code(Dialect::QiskitDialect)),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InputKind::Code(d) => d.as_str(),
            InputKind::Design(f) => f.as_str(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisConfig {
    pub gate_set: GateSet,
    pub cfg_mode: CfgMode,
    /// Forces the dialect of every code input.
    pub dialect: Option<Dialect>,
    /// Forces the format of every input whose extension is not code.
    pub design_format: Option<DesignFormat>,
    pub emit_dot: bool,
    pub recursive: bool,
}

impl AnalysisConfig {
    fn kind_of(&self, path: &Path) -> Option<InputKind> {
        let by_name = InputKind::from_path(path);
        match (by_name, self.dialect, self.design_format) {
            (Some(InputKind::Code(_)) | None, Some(d), _) => Some(InputKind::Code(d)),
            (Some(InputKind::Design(_)) | None, _, Some(f)) => Some(InputKind::Design(f)),
            (kind, _, _) => kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CfgSummary {
    pub mode: CfgMode,
    pub node_count: usize,
    pub edge_count: usize,
    /// Absent when the graph is empty.
    pub cyclomatic: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeMetrics {
    pub loc: LocMetrics,
    pub halstead: HalsteadMetrics,
    pub cfg: CfgSummary,
    pub information_flow: InfoFlowMetrics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignMetrics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaMetrics>,
}

/// Result for one input file: code metrics or design metrics, never both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub input: Option<InputKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeMetrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignMetrics>,
    /// Metrics computed under a degenerate-case convention.
    pub degenerate: Vec<&'static str>,
    /// `path:line:column: message` strings.
    pub errors: Vec<String>,
}

impl FileRecord {
    fn new(path: &str, input: Option<InputKind>) -> Self {
        FileRecord {
            path: path.to_string(),
            input,
            code: None,
            design: None,
            degenerate: Vec::new(),
            errors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub gate_set: Vec<String>,
    pub cfg_mode: CfgMode,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MetricSummary {
    pub count: usize,
    pub sum: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Aggregate {
    pub files: usize,
    pub files_with_errors: usize,
    pub metrics: BTreeMap<String, MetricSummary>,
}

impl Aggregate {
    pub fn add(&mut self, record: &FileRecord) {
        self.files += 1;
        if !record.errors.is_empty() {
            self.files_with_errors += 1;
        }
        for (name, value) in metric_values(record) {
            let m = self.metrics.entry(name.to_string()).or_default();
            m.count += 1;
            m.sum += value;
            m.mean = m.sum / m.count as f64;
        }
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a FileRecord>) -> Self {
        records.into_iter().fold(Aggregate::default(), |mut acc, r| {
            acc.add(r);
            acc
        })
    }
}

/// Scalar metrics of a record that enter the aggregate. Per-module flow is
/// folded into the sum of module IF values.
pub fn metric_values(record: &FileRecord) -> Vec<(&'static str, f64)> {
    let mut out = Vec::new();
    if let Some(c) = &record.code {
        let l = &c.loc;
        let h = &c.halstead;
        out.extend([
            ("phi1", l.phi1 as f64),
            ("phi2", l.phi2 as f64),
            ("phi3", l.phi3 as f64),
            ("phi4", l.phi4 as f64),
            ("phi5", l.phi5 as f64),
            ("phi6", l.phi6 as f64),
            ("eta1", h.eta1 as f64),
            ("eta2", h.eta2 as f64),
            ("m1", h.m1 as f64),
            ("m2", h.m2 as f64),
            ("length_m", h.length_m as f64),
            ("vocabulary_eta", h.vocabulary_eta as f64),
            ("estimated_length_me", h.estimated_length_me),
            ("volume_vq", h.volume_vq),
            ("difficulty_dq", h.difficulty_dq),
            ("effort_eq", h.effort_eq),
        ]);
        if let Some(v) = c.cfg.cyclomatic {
            out.push(("cyclomatic", v as f64));
        }
        let total: u64 = c.information_flow.modules.iter().map(|m| m.if_value).sum();
        out.push(("information_flow", total as f64));
    }
    if let Some(d) = &record.design {
        if let Some(g) = &d.gamma {
            out.extend([
                ("gamma1", g.gamma1 as f64),
                ("gamma2", g.gamma2 as f64),
                ("gamma3", g.gamma3 as f64),
                ("gamma4", g.gamma4 as f64),
                ("gamma5", g.gamma5 as f64),
                ("gamma6", g.gamma6 as f64),
            ]);
        }
        if let Some(dm) = &d.delta {
            out.extend([("delta1", dm.delta1 as f64), ("delta3", dm.delta3 as f64)]);
        }
        if let Some(t) = &d.theta {
            out.extend([
                ("theta1", t.theta1 as f64),
                ("theta2", t.theta2 as f64),
                ("theta3", t.theta3 as f64),
                ("theta4", t.theta4 as f64),
                ("theta5", t.theta5 as f64),
            ]);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: ConfigEcho,
    pub records: Vec<FileRecord>,
    pub aggregate: Aggregate,
}

impl MetricsReport {
    pub fn new(config: &AnalysisConfig, records: Vec<FileRecord>) -> Self {
        MetricsReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            config: ConfigEcho {
                gate_set: config.gate_set.names().map(str::to_string).collect(),
                cfg_mode: config.cfg_mode,
            },
            aggregate: Aggregate::from_records(&records),
            records,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.records.iter().any(|r| !r.errors.is_empty())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

/// Computes every code metric for an already parsed program.
pub fn analyze_program(program: &QProgram, mode: CfgMode, emit_dot: bool) -> (CodeMetrics, Vec<&'static str>, Vec<CfgError>) {
    let mut degenerate = Vec::new();
    let mut errors = Vec::new();
    let halstead = compute_halstead(program);
    if halstead.degenerate {
        degenerate.push("halstead");
    }
    let cfg = match build_qcfg(program, mode) {
        Ok(g) => {
            let value = cyclomatic(&g).ok();
            if value.is_none() {
                degenerate.push("cyclomatic");
            }
            CfgSummary {
                mode,
                node_count: g.node_count(),
                edge_count: g.edge_count(),
                cyclomatic: value,
                dot: emit_dot.then(|| g.to_dot(program, crate::model::MAIN_MODULE)),
            }
        }
        Err(e) => {
            errors.push(e);
            CfgSummary {
                mode,
                node_count: 0,
                edge_count: 0,
                cyclomatic: None,
                dot: None,
            }
        }
    };
    let metrics = CodeMetrics {
        loc: compute_loc_metrics(program),
        halstead,
        cfg,
        information_flow: compute_information_flow(program),
    };
    (metrics, degenerate, errors)
}

/// Analyzes source text as if read from `path`.
pub fn analyze_source(path: &str, source: &str, dialect: Dialect, config: &AnalysisConfig) -> FileRecord {
    let mut record = FileRecord::new(path, Some(InputKind::Code(dialect)));
    let parsed = match dialect {
        Dialect::OpenQasm2 => parse_qasm_source(source).map_err(|e| e.to_string()),
        Dialect::QiskitDialect => {
            parse_qiskit_dialect_with(source, &config.gate_set).map_err(|e| e.to_string())
        }
    };
    match parsed {
        Ok(program) => {
            let (metrics, degenerate, errors) = analyze_program(&program, config.cfg_mode, config.emit_dot);
            record.code = Some(metrics);
            record.degenerate = degenerate;
            record.errors = errors.iter().map(|e| cfg_error_string(path, e)).collect();
        }
        Err(message) => record.errors.push(format!("{path}:{message}")),
    }
    record
}

fn cfg_error_string(path: &str, e: &CfgError) -> String {
    match e {
        CfgError::EmptyBody { line } | CfgError::MalformedBlock { line } => {
            let message = e.to_string();
            let message = message.split_once(": ").map_or(message.as_str(), |(_, m)| m);
            format!("{path}:{line}:0: {message}")
        }
        other => format!("{path}:1:0: {other}"),
    }
}

pub fn analyze_file(path: &Path, config: &AnalysisConfig) -> FileRecord {
    let shown = path.display().to_string();
    let kind = config.kind_of(path);
    let mut record = FileRecord::new(&shown, kind);
    match kind {
        None => record
            .errors
            .push(format!("{shown}:1:0: cannot determine input kind from the file name")),
        Some(InputKind::Code(dialect)) => match std::fs::read_to_string(path) {
            Ok(source) => return analyze_source(&shown, &source, dialect, config),
            Err(e) => record.errors.push(format!("{shown}:1:0: {e}")),
        },
        Some(InputKind::Design(format)) => match parse_design_document(path, format) {
            Ok(model) => record.design = Some(design_metrics(&model)),
            Err(e) if e.line().is_some() => record.errors.push(e.to_string()),
            Err(e) => record.errors.push(format!("{shown}:1:0: {}", e.to_string().trim_start_matches(&format!("{shown}: ")))),
        },
    }
    record
}

pub fn design_metrics(model: &DesignModel) -> DesignMetrics {
    let mut d = DesignMetrics {
        gamma: None,
        delta: None,
        theta: None,
    };
    match model {
        DesignModel::Architecture(a) => d.gamma = Some(compute_gamma(a)),
        DesignModel::Patterns(p) => d.delta = Some(compute_delta(p)),
        DesignModel::Quml(m) => d.theta = Some(compute_theta(m)),
    }
    d
}

/// Expands the given paths into the sorted, de-duplicated list of files to
/// analyze. Directories contribute files with a recognized extension: their
/// direct children, or the whole tree with `recursive`. Explicit files are
/// kept as given, and missing paths are kept so they surface as errors.
pub fn collect_inputs(paths: &[PathBuf], config: &AnalysisConfig) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let depth = if config.recursive { usize::MAX } else { 1 };
            for entry in walkdir::WalkDir::new(p).max_depth(depth).into_iter().flatten() {
                if entry.file_type().is_file() && InputKind::from_path(entry.path()).is_some() {
                    out.push(entry.into_path());
                }
            }
        } else {
            out.push(p.clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Analyzes all inputs in parallel; records come back ordered by path.
pub fn analyze_paths(paths: &[PathBuf], config: &AnalysisConfig) -> MetricsReport {
    let files = collect_inputs(paths, config);
    let records = files.par_iter().map(|f| analyze_file(f, config)).collect();
    MetricsReport::new(config, records)
}

fn render_text(report: &MetricsReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "qmetrics {} (cfg mode: {})", report.tool_version, report.config.cfg_mode.as_str());
    for r in &report.records {
        let kind = r.input.map_or("unknown", InputKind::as_str);
        let _ = writeln!(w, "\n{} [{}]", r.path, kind);
        if let Some(c) = &r.code {
            let l = &c.loc;
            let rows: [(&str, &str, String); 6] = [
                ("φ1", "lines of code", l.phi1.to_string()),
                ("φ2", "gate operation lines", l.phi2.to_string()),
                ("φ3", "measurement lines", l.phi3.to_string()),
                ("φ4", "quantum operation lines", l.phi4.to_string()),
                ("φ5", "qubits", l.phi5.to_string()),
                ("φ6", "unique gates", l.phi6.to_string()),
            ];
            row_block(w, &rows);
            let h = &c.halstead;
            let rows: [(&str, &str, String); 10] = [
                ("η1", "unique operators", h.eta1.to_string()),
                ("η2", "unique operands", h.eta2.to_string()),
                ("M1", "total operators", h.m1.to_string()),
                ("M2", "total operands", h.m2.to_string()),
                ("M", "program length", h.length_m.to_string()),
                ("η", "vocabulary", h.vocabulary_eta.to_string()),
                ("M_E", "estimated length", format!("{:.4}", h.estimated_length_me)),
                ("V_Q", "volume", format!("{:.4}", h.volume_vq)),
                ("D_Q", "difficulty", format!("{:.4}", h.difficulty_dq)),
                ("E_Q", "effort", format!("{:.4}", h.effort_eq)),
            ];
            row_block(w, &rows);
            let v = c.cfg.cyclomatic.map_or("undefined".to_string(), |v| v.to_string());
            let _ = writeln!(
                w,
                "  {:<8}{:<27} {} (nodes {}, edges {}, {} cfg)",
                "V(G_Q)",
                "cyclomatic complexity",
                v,
                c.cfg.node_count,
                c.cfg.edge_count,
                c.cfg.mode.as_str()
            );
            for m in &c.information_flow.modules {
                let _ = writeln!(
                    w,
                    "  {:<8}{:<27} {} (length {}, fan-in {}, fan-out {})",
                    "IF",
                    format!("information flow [{}]", m.module),
                    m.if_value,
                    m.length,
                    m.fan_in,
                    m.fan_out
                );
            }
            if let Some(dot) = &c.cfg.dot {
                let _ = write!(w, "{dot}");
            }
        }
        if let Some(d) = &r.design {
            if let Some(g) = &d.gamma {
                let rows: [(&str, &str, String); 6] = [
                    ("γ1", "specification lines", g.gamma1.to_string()),
                    ("γ2", "components + connectors", g.gamma2.to_string()),
                    ("γ3", "quantum components", g.gamma3.to_string()),
                    ("γ4", "quantum connectors", g.gamma4.to_string()),
                    ("γ5", "mixed connectors", g.gamma5.to_string()),
                    ("γ6", "quantum architecture size", g.gamma6.to_string()),
                ];
                row_block(w, &rows);
            }
            if let Some(dm) = &d.delta {
                let _ = writeln!(w, "  {:<8}{:<27} {}", "δ1", "pattern types", dm.delta1);
                for (name, n) in &dm.delta2 {
                    let _ = writeln!(w, "  {:<8}{:<27} {}", "δ2", format!("instances of {name}"), n);
                }
                let _ = writeln!(w, "  {:<8}{:<27} {}", "δ3", "quantum pattern types", dm.delta3);
                for (name, n) in &dm.delta4 {
                    let _ = writeln!(w, "  {:<8}{:<27} {}", "δ4", format!("instances of {name}"), n);
                }
            }
            if let Some(t) = &d.theta {
                let rows: [(&str, &str, String); 5] = [
                    ("θ1", "quantum classes", t.theta1.to_string()),
                    ("θ2", "quantum elements", t.theta2.to_string()),
                    ("θ3", "quantum interfaces", t.theta3.to_string()),
                    ("θ4", "quantum attributes", t.theta4.to_string()),
                    ("θ5", "quantum methods", t.theta5.to_string()),
                ];
                row_block(w, &rows);
            }
        }
        if !r.degenerate.is_empty() {
            let _ = writeln!(w, "  degenerate: {}", r.degenerate.join(", "));
        }
        for e in &r.errors {
            let _ = writeln!(w, "  error: {e}");
        }
    }
    let a = &report.aggregate;
    let _ = writeln!(w, "\naggregate: {} files, {} with errors", a.files, a.files_with_errors);
    for (name, m) in &a.metrics {
        let _ = writeln!(w, "  {:<22}count {:<5}sum {:<14.4}mean {:.4}", name, m.count, m.sum, m.mean);
    }
    out
}

fn row_block(w: &mut String, rows: &[(&str, &str, String)]) {
    for (symbol, name, value) in rows {
        let _ = writeln!(w, "  {:<8}{:<27} {}", symbol, name, value);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOPED_MEASURE: &str = include_str!("../fixtures/qiskit/looped_measure.py");

    #[test]
    fn kind_from_extension() {
        assert_eq!(InputKind::from_path(Path::new("a.qasm")), Some(InputKind::Code(Dialect::OpenQasm2)));
        assert_eq!(InputKind::from_path(Path::new("a.py")), Some(InputKind::Code(Dialect::QiskitDialect)));
        assert_eq!(InputKind::from_path(Path::new("a.quml.json")), Some(InputKind::Design(DesignFormat::Quml)));
        assert_eq!(InputKind::from_path(Path::new("a.txt")), None);
    }

    #[test]
    fn overrides() {
        let config = AnalysisConfig {
            dialect: Some(Dialect::QiskitDialect),
            ..Default::default()
        };
        assert_eq!(config.kind_of(Path::new("x.txt")), Some(InputKind::Code(Dialect::QiskitDialect)));
        assert_eq!(config.kind_of(Path::new("x.qasm")), Some(InputKind::Code(Dialect::QiskitDialect)));
        assert_eq!(config.kind_of(Path::new("x.arch.json")), Some(InputKind::Design(DesignFormat::Arch)));
    }

    #[test]
    fn looped_measure_record() {
        let r = analyze_source("prog.py", LOOPED_MEASURE, Dialect::QiskitDialect, &AnalysisConfig::default());
        assert!(r.errors.is_empty());
        let c = r.code.unwrap();
        assert_eq!((c.cfg.node_count, c.cfg.edge_count, c.cfg.cyclomatic), (16, 17, Some(3)));
        assert_eq!(c.loc.phi1, 16);
    }

    #[test]
    fn classical_mode_is_echoed() {
        let config = AnalysisConfig {
            cfg_mode: CfgMode::Classical,
            ..Default::default()
        };
        let r = analyze_source("prog.py", LOOPED_MEASURE, Dialect::QiskitDialect, &config);
        let report = MetricsReport::new(&config, vec![r]);
        let json = report.to_json();
        assert!(json.contains("\"cfg_mode\": \"classical\""));
        assert!(json.contains("\"mode\": \"classical\""));
        assert!(json.contains("\"cyclomatic\": 2"));
    }

    #[test]
    fn empty_program_is_degenerate_not_an_error() {
        let r = analyze_source("e.qasm", "", Dialect::OpenQasm2, &AnalysisConfig::default());
        assert!(r.errors.is_empty());
        assert_eq!(r.degenerate, ["halstead", "cyclomatic"]);
        assert_eq!(r.code.as_ref().unwrap().cfg.cyclomatic, None);
    }

    #[test]
    fn parse_errors_carry_path_and_line() {
        let r = analyze_source("bad.qasm", "qreg q[1];\nfrob q[0];\n", Dialect::OpenQasm2, &AnalysisConfig::default());
        assert!(r.code.is_none());
        assert!(r.errors[0].starts_with("bad.qasm:2:0: "), "{}", r.errors[0]);
        let r = analyze_source("bad.py", "import os\n", Dialect::QiskitDialect, &AnalysisConfig::default());
        assert!(r.errors[0].starts_with("bad.py:1:0: "), "{}", r.errors[0]);
    }

    #[test]
    fn aggregate_is_a_fold() {
        let config = AnalysisConfig::default();
        let a = analyze_source("a.qasm", "qreg q[1];\nh q[0];\n", Dialect::OpenQasm2, &config);
        let b = analyze_source("b.py", LOOPED_MEASURE, Dialect::QiskitDialect, &config);
        let agg = Aggregate::from_records([&a, &b]);
        assert_eq!(agg.files, 2);
        let phi1 = agg.metrics["phi1"];
        assert_eq!((phi1.count, phi1.sum, phi1.mean), (2, 18.0, 9.0));
        let mut step = Aggregate::default();
        step.add(&a);
        step.add(&b);
        assert_eq!(step, agg);
    }

    #[test]
    fn text_report_shows_symbols() {
        let config = AnalysisConfig::default();
        let r = analyze_source("prog.py", LOOPED_MEASURE, Dialect::QiskitDialect, &config);
        let text = MetricsReport::new(&config, vec![r]).to_text();
        for needle in ["φ1", "lines of code", "V_Q", "V(G_Q)", "IF", "information flow [main]"] {
            assert!(text.contains(needle), "{needle}");
        }
    }

    #[test]
    fn dot_is_embedded_on_request() {
        let config = AnalysisConfig {
            emit_dot: true,
            ..Default::default()
        };
        let r = analyze_source("b.qasm", "qreg q[1];\nh q[0];\n", Dialect::OpenQasm2, &config);
        let dot = r.code.unwrap().cfg.dot.unwrap();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"2: gate_application\""));
    }
}
