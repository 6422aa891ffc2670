use std::collections::BTreeSet;

use serde::Serialize;

use crate::model::{QModule, QProgram};

/// Henry-Kafura flow record for one module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleFlow {
    pub module: String,
    pub length: usize,
    pub fan_in: u64,
    pub fan_out: u64,
    pub if_value: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InfoFlowMetrics {
    pub modules: Vec<ModuleFlow>,
}

impl InfoFlowMetrics {
    pub fn module(&self, name: &str) -> Option<&ModuleFlow> {
        self.modules.iter().find(|m| m.module == name)
    }
}

/// Registers are the shared data structures: fan-in adds the registers a
/// module reads, fan-out the registers it writes. Formal parameters are
/// excluded, since flows through them are already counted as call sites.
pub fn compute_information_flow(p: &QProgram) -> InfoFlowMetrics {
    let modules = p.modules.iter().map(|m| module_flow(p, m)).collect();
    InfoFlowMetrics { modules }
}

fn module_flow(p: &QProgram, module: &QModule) -> ModuleFlow {
    let is_param = |name: &String| module.params.iter().any(|x| x == name);
    let mut reads = BTreeSet::new();
    let mut writes = BTreeSet::new();
    let mut outgoing_calls = 0u64;
    for i in module.indices() {
        let s = &p.statements[i];
        reads.extend(s.registers_read.iter().filter(|r| !is_param(r)));
        writes.extend(s.registers_written.iter().filter(|r| !is_param(r)));
        if s.callee.as_ref().is_some_and(|c| *c != module.name) {
            outgoing_calls += 1;
        }
    }
    let incoming_calls = p
        .statements
        .iter()
        .enumerate()
        .filter(|(i, s)| s.callee.as_deref() == Some(&module.name) && !module.contains(*i))
        .count() as u64;
    let fan_in = incoming_calls + reads.len() as u64;
    let fan_out = outgoing_calls + writes.len() as u64;
    let product = fan_in * fan_out;
    ModuleFlow {
        module: module.name.clone(),
        length: module.length_loc,
        fan_in,
        fan_out,
        if_value: module.length_loc as u64 * product * product,
    }
}
