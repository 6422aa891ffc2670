use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_unique, counted_lines, DesignError, Document};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Classical,
    Quantum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
}

/// Connectors are undirected; `from`/`to` only name the endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Connector {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchitectureSpec {
    pub source_lines: usize,
    pub components: Vec<Component>,
    pub connectors: Vec<Connector>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArchDoc {
    components: Vec<Component>,
    connectors: Vec<Connector>,
}

pub(super) fn parse(doc: &Document<'_>) -> Result<ArchitectureSpec, DesignError> {
    let raw: ArchDoc = doc.deserialize()?;
    check_unique(
        doc,
        raw.components
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("/components/{i}/name"), c.name.as_str())),
        "component",
    )?;
    for (i, c) in raw.connectors.iter().enumerate() {
        for end in [&c.from, &c.to] {
            if !raw.components.iter().any(|k| k.name == *end) {
                return Err(doc.unknown_component(i, end));
            }
        }
    }
    Ok(ArchitectureSpec {
        source_lines: counted_lines(doc.text),
        components: raw.components,
        connectors: raw.connectors,
    })
}

/// Architectural size.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GammaMetrics {
    /// Specification lines.
    pub gamma1: usize,
    /// Components plus connectors.
    pub gamma2: usize,
    /// Quantum components.
    pub gamma3: usize,
    /// Connectors between two quantum components.
    pub gamma4: usize,
    /// Connectors between a quantum and a classical component.
    pub gamma5: usize,
    /// `gamma3 + gamma4 + gamma5`.
    pub gamma6: usize,
}

pub fn compute_gamma(s: &ArchitectureSpec) -> GammaMetrics {
    let kinds: BTreeMap<&str, ComponentKind> = s
        .components
        .iter()
        .map(|c| (c.name.as_str(), c.kind))
        .collect();
    let is_quantum = |name: &str| kinds.get(name) == Some(&ComponentKind::Quantum);
    let gamma3 = s
        .components
        .iter()
        .filter(|c| c.kind == ComponentKind::Quantum)
        .count();
    let (mut gamma4, mut gamma5) = (0, 0);
    for c in &s.connectors {
        match (is_quantum(&c.from), is_quantum(&c.to)) {
            (true, true) => gamma4 += 1,
            (true, false) | (false, true) => gamma5 += 1,
            (false, false) => {}
        }
    }
    GammaMetrics {
        gamma1: s.source_lines,
        gamma2: s.components.len() + s.connectors.len(),
        gamma3,
        gamma4,
        gamma5,
        gamma6: gamma3 + gamma4 + gamma5,
    }
}
