//! Design-level documents (architecture specs, pattern records, Q-UML
//! models) and the size metrics computed over them.
//!
//! All three formats are JSON with a fixed schema; unknown fields are
//! rejected. See `docs/formats.md` for the field-by-field description.

mod arch;
mod patterns;
mod quml;

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

pub use arch::{compute_gamma, ArchitectureSpec, Component, ComponentKind, Connector, GammaMetrics};
pub use patterns::{compute_delta, DeltaMetrics, PatternEntry, PatternRecord};
pub use quml::{
    compute_theta, ElementKind, QumlAttribute, QumlClass, QumlElement, QumlModel, ThetaMetrics,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignFormat {
    Arch,
    Patterns,
    Quml,
}

impl DesignFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            DesignFormat::Arch => "arch",
            DesignFormat::Patterns => "patterns",
            DesignFormat::Quml => "quml",
        }
    }

    /// Format implied by a `.arch.json`, `.patterns.json` or `.quml.json`
    /// file name.
    pub fn from_path(path: &Path) -> Option<Self> {
        let name = path.file_name()?.to_str()?;
        [Self::Arch, Self::Patterns, Self::Quml]
            .into_iter()
            .find(|f| name.ends_with(&format!(".{}.json", f.as_str())))
    }
}

impl std::str::FromStr for DesignFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arch" => Ok(Self::Arch),
            "patterns" => Ok(Self::Patterns),
            "quml" => Ok(Self::Quml),
            other => Err(format!("unknown design format `{other}`")),
        }
    }
}

impl fmt::Display for DesignFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("{path}:{line}:{column}: schema error at {location}: {message}")]
    SchemaError {
        path: String,
        line: usize,
        column: usize,
        /// JSON pointer to the offending value, `/` for the document root.
        location: String,
        message: String,
    },
    #[error("{path}:{line}:{column}: connector {index} references unknown component `{name}`")]
    UnknownComponent {
        path: String,
        line: usize,
        column: usize,
        index: usize,
        name: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl DesignError {
    pub fn line(&self) -> Option<usize> {
        match self {
            DesignError::SchemaError { line, .. } | DesignError::UnknownComponent { line, .. } => {
                Some(*line)
            }
            DesignError::Io { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignModel {
    Architecture(ArchitectureSpec),
    Patterns(PatternRecord),
    Quml(QumlModel),
}

pub fn parse_design_document(path: &Path, format: DesignFormat) -> Result<DesignModel, DesignError> {
    let text = std::fs::read_to_string(path).map_err(|e| DesignError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_design_str(&text, &path.display().to_string(), format)
}

/// Parses document text; `path` is only used in error messages.
pub fn parse_design_str(text: &str, path: &str, format: DesignFormat) -> Result<DesignModel, DesignError> {
    let doc = Document { text, path };
    Ok(match format {
        DesignFormat::Arch => DesignModel::Architecture(arch::parse(&doc)?),
        DesignFormat::Patterns => DesignModel::Patterns(patterns::parse(&doc)?),
        DesignFormat::Quml => DesignModel::Quml(quml::parse(&doc)?),
    })
}

/// Source text plus the helpers the format parsers share.
struct Document<'a> {
    text: &'a str,
    path: &'a str,
}

impl Document<'_> {
    fn deserialize<T: DeserializeOwned>(&self) -> Result<T, DesignError> {
        serde_json::from_str(self.text).map_err(|e| DesignError::SchemaError {
            path: self.path.to_string(),
            line: e.line().max(1),
            column: e.column().saturating_sub(1),
            location: "/".into(),
            message: strip_position(&e.to_string()),
        })
    }

    /// Schema error for a value that deserialized fine but breaks an
    /// invariant. serde_json keeps no spans, so the position is that of the
    /// `occurrence`-th (0-based) appearance of `needle` as a JSON string.
    fn invalid(&self, location: String, needle: &str, occurrence: usize, message: String) -> DesignError {
        let (line, column) = self.find_string(needle, occurrence);
        DesignError::SchemaError {
            path: self.path.to_string(),
            line,
            column,
            location,
            message,
        }
    }

    fn unknown_component(&self, index: usize, name: &str) -> DesignError {
        let (line, column) = self.find_string(name, 0);
        DesignError::UnknownComponent {
            path: self.path.to_string(),
            line,
            column,
            index,
            name: name.to_string(),
        }
    }

    fn find_string(&self, needle: &str, occurrence: usize) -> (usize, usize) {
        let quoted = serde_json::to_string(needle).unwrap_or_default();
        match self.text.match_indices(&quoted).nth(occurrence) {
            Some((offset, _)) => {
                let before = &self.text[..offset];
                let line = before.matches('\n').count() + 1;
                let column = offset - before.rfind('\n').map_or(0, |i| i + 1);
                (line, column)
            }
            None => (1, 0),
        }
    }
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Counted lines of a document: non-blank lines that do not start with
/// `//` or `#`.
pub fn counted_lines(text: &str) -> usize {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("//") && !l.starts_with('#'))
        .count()
}

/// Error for duplicate names: the second occurrence of the name is the
/// offending one.
fn check_unique<'n>(
    doc: &Document<'_>,
    names: impl IntoIterator<Item = (String, &'n str)>,
    what: &str,
) -> Result<(), DesignError> {
    let mut seen = std::collections::BTreeSet::new();
    for (location, name) in names {
        if name.is_empty() {
            return Err(doc.invalid(location, name, 0, format!("{what} name must not be empty")));
        }
        if !seen.insert(name) {
            return Err(doc.invalid(location, name, 1, format!("duplicate {what} name `{name}`")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_from_path() {
        assert_eq!(DesignFormat::from_path(Path::new("a/sys.arch.json")), Some(DesignFormat::Arch));
        assert_eq!(DesignFormat::from_path(Path::new("x.patterns.json")), Some(DesignFormat::Patterns));
        assert_eq!(DesignFormat::from_path(Path::new("x.quml.json")), Some(DesignFormat::Quml));
        assert_eq!(DesignFormat::from_path(Path::new("x.json")), None);
        assert_eq!(DesignFormat::from_path(Path::new("arch.json")), None);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_design_str("{\n  \"patterns\": [,]\n}", "p.patterns.json", DesignFormat::Patterns).unwrap_err();
        match &err {
            DesignError::SchemaError { line, location, .. } => {
                assert_eq!(*line, 2);
                assert_eq!(location, "/");
            }
            other => panic!("{other:?}"),
        }
        assert!(err.to_string().starts_with("p.patterns.json:2:"));
    }

    #[test]
    fn unknown_fields_rejected() {
        for (text, format) in [
            ("{\"components\": [], \"connectors\": [], \"extra\": 1}", DesignFormat::Arch),
            ("{\"patterns\": [{\"type_name\": \"A\", \"quantum\": true, \"instances\": [\"a\"], \"x\": 0}]}", DesignFormat::Patterns),
            ("{\"classes\": [{\"name\": \"A\", \"quantum\": true, \"colour\": \"red\"}]}", DesignFormat::Quml),
        ] {
            let err = parse_design_str(text, "doc", format).unwrap_err();
            assert!(err.to_string().contains("unknown field"), "{err}");
        }
    }

    #[test]
    fn counted_lines_skip_blanks() {
        assert_eq!(counted_lines("{\n\n  \"a\": 1\n   \n}\n"), 3);
    }

    #[test]
    fn io_error() {
        let err = parse_design_document(Path::new("/nonexistent/x.arch.json"), DesignFormat::Arch).unwrap_err();
        assert!(matches!(err, DesignError::Io { .. }));
    }
}
