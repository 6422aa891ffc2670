use std::collections::BTreeSet;

use serde::Serialize;

use crate::model::{QProgram, RegisterKind, StatementKind};

/// Line-of-code counts.
///
/// `phi2` and `phi3` count physical lines. A line holding both a gate
/// application and a measurement is attributed to `phi2` only, so
/// `phi2 + phi3 <= phi1` holds for every input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LocMetrics {
    /// Counted lines.
    pub phi1: usize,
    /// Lines with a gate application.
    pub phi2: usize,
    /// Lines with a measurement.
    pub phi3: usize,
    /// `phi2 + phi3`.
    pub phi4: usize,
    /// Declared qubits.
    pub phi5: usize,
    /// Distinct gate names.
    pub phi6: usize,
}

pub fn compute_loc_metrics(p: &QProgram) -> LocMetrics {
    let lines_of = |kind| -> BTreeSet<usize> {
        p.statements
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.span.line)
            .collect()
    };
    let gate_lines = lines_of(StatementKind::GateApplication);
    let measure_lines = lines_of(StatementKind::Measurement);
    let phi2 = gate_lines.len();
    let phi3 = measure_lines.difference(&gate_lines).count();
    let gate_names: BTreeSet<&str> = p
        .statements
        .iter()
        .filter_map(|s| s.gate_name.as_deref())
        .collect();
    LocMetrics {
        phi1: p.source_lines_total,
        phi2,
        phi3,
        phi4: phi2 + phi3,
        phi5: p
            .registers
            .iter()
            .filter(|r| r.kind == RegisterKind::Quantum)
            .map(|r| r.width)
            .sum(),
        phi6: gate_names.len(),
    }
}
