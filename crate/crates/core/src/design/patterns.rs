use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_unique, DesignError, Document};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternEntry {
    pub type_name: String,
    pub quantum: bool,
    pub instances: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternRecord {
    pub patterns: Vec<PatternEntry>,
}

pub(super) fn parse(doc: &Document<'_>) -> Result<PatternRecord, DesignError> {
    let record: PatternRecord = doc.deserialize()?;
    check_unique(
        doc,
        record
            .patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("/patterns/{i}/type_name"), p.type_name.as_str())),
        "pattern type",
    )?;
    if let Some((i, p)) = record
        .patterns
        .iter()
        .enumerate()
        .find(|(_, p)| p.instances.is_empty())
    {
        return Err(doc.invalid(
            format!("/patterns/{i}/instances"),
            &p.type_name,
            0,
            format!("pattern `{}` has no instances", p.type_name),
        ));
    }
    Ok(record)
}

/// Detailed-design size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DeltaMetrics {
    /// Pattern types.
    pub delta1: usize,
    /// Instances per pattern type.
    pub delta2: BTreeMap<String, usize>,
    /// Quantum pattern types.
    pub delta3: usize,
    /// Instances per quantum pattern type.
    pub delta4: BTreeMap<String, usize>,
}

pub fn compute_delta(d: &PatternRecord) -> DeltaMetrics {
    let count = |quantum_only: bool| -> BTreeMap<String, usize> {
        d.patterns
            .iter()
            .filter(|p| p.quantum || !quantum_only)
            .map(|p| (p.type_name.clone(), p.instances.len()))
            .collect()
    };
    let delta2 = count(false);
    let delta4 = count(true);
    DeltaMetrics {
        delta1: delta2.len(),
        delta3: delta4.len(),
        delta2,
        delta4,
    }
}
