//! `qmetrics analyze` argument handling.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cfg::CfgMode;
use crate::design::DesignFormat;
use crate::model::{Dialect, GateSet};
use crate::report::{analyze_paths, AnalysisConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANALYSIS_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qmetrics", version, about = "Static size and structure metrics for quantum programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze programs and design documents.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    /// Files or directories.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Descend into subdirectories.
    #[arg(long)]
    recursive: bool,
    #[arg(long, value_enum)]
    dialect: Option<DialectArg>,
    #[arg(long, value_enum)]
    design_format: Option<DesignFormatArg>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// File listing gate names (whitespace or comma separated, `#` comments).
    #[arg(long)]
    gate_set: Option<PathBuf>,
    /// Build loops without the final-iteration fallthrough edge.
    #[arg(long)]
    classical_cfg: bool,
    /// Embed the control-flow graph in the report.
    #[arg(long, value_enum)]
    emit_cfg: Option<CfgFormat>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DialectArg {
    Qasm,
    Qiskit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DesignFormatArg {
    Arch,
    Patterns,
    Quml,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CfgFormat {
    Dot,
}

/// Runs the command line and returns the process exit code: 0 when every
/// input was analyzed, 1 when some input failed (the report is still
/// written), 2 on usage errors.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let Command::Analyze(args) = cli.command;

    let gate_set = match &args.gate_set {
        None => GateSet::default(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => GateSet::parse(&text),
            Err(e) => {
                let _ = writeln!(stderr, "qmetrics: cannot read gate set {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
    };
    let config = AnalysisConfig {
        gate_set,
        cfg_mode: if args.classical_cfg { CfgMode::Classical } else { CfgMode::Fallthrough },
        dialect: args.dialect.map(|d| match d {
            DialectArg::Qasm => Dialect::OpenQasm2,
            DialectArg::Qiskit => Dialect::QiskitDialect,
        }),
        design_format: args.design_format.map(|f| match f {
            DesignFormatArg::Arch => DesignFormat::Arch,
            DesignFormatArg::Patterns => DesignFormat::Patterns,
            DesignFormatArg::Quml => DesignFormat::Quml,
        }),
        emit_dot: args.emit_cfg.is_some(),
        recursive: args.recursive,
    };

    let report = analyze_paths(&args.paths, &config);
    let rendered = match args.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Text => report.to_text(),
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, &rendered),
        None => stdout.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "qmetrics: cannot write report: {e}");
        return EXIT_USAGE;
    }
    for record in &report.records {
        for e in &record.errors {
            let _ = writeln!(stderr, "{e}");
        }
    }
    if report.has_errors() {
        EXIT_ANALYSIS_ERROR
    } else {
        EXIT_OK
    }
}
