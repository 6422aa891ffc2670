use std::collections::BTreeMap;

use serde::Serialize;

use crate::model::{QProgram, TokenRole};

/// Operator and operand multisets, keyed by token text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HalsteadTokens {
    pub operators: BTreeMap<String, usize>,
    pub operands: BTreeMap<String, usize>,
}

impl HalsteadTokens {
    pub fn unique_operators(&self) -> usize {
        self.operators.len()
    }

    pub fn unique_operands(&self) -> usize {
        self.operands.len()
    }

    pub fn total_operators(&self) -> usize {
        self.operators.values().sum()
    }

    pub fn total_operands(&self) -> usize {
        self.operands.values().sum()
    }
}

/// Counts of classical and quantum operators/operands and the measures
/// derived from them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct HalsteadMetrics {
    /// Unique operators.
    pub eta1: usize,
    /// Unique operands.
    pub eta2: usize,
    /// Total operators.
    pub m1: usize,
    /// Total operands.
    pub m2: usize,
    pub length_m: usize,
    pub vocabulary_eta: usize,
    pub estimated_length_me: f64,
    pub volume_vq: f64,
    pub difficulty_dq: f64,
    pub effort_eq: f64,
    /// Set when there are no operators or no operands; the real-valued
    /// measures then use the `0 * log2(0) = 0` and `D = 0` conventions.
    pub degenerate: bool,
}

fn xlog2x(x: usize) -> f64 {
    if x == 0 {
        0.0
    } else {
        x as f64 * (x as f64).log2()
    }
}

impl HalsteadMetrics {
    pub fn from_counts(eta1: usize, eta2: usize, m1: usize, m2: usize) -> Self {
        let length_m = m1 + m2;
        let vocabulary_eta = eta1 + eta2;
        let volume_vq = if vocabulary_eta == 0 {
            0.0
        } else {
            length_m as f64 * (vocabulary_eta as f64).log2()
        };
        let difficulty_dq = if eta2 == 0 {
            0.0
        } else {
            (eta1 as f64 / 2.0) * (m2 as f64 / eta2 as f64)
        };
        HalsteadMetrics {
            eta1,
            eta2,
            m1,
            m2,
            length_m,
            vocabulary_eta,
            estimated_length_me: xlog2x(eta1) + xlog2x(eta2),
            volume_vq,
            difficulty_dq,
            effort_eq: difficulty_dq * volume_vq,
            degenerate: eta1 == 0 || eta2 == 0,
        }
    }
}

pub fn tokenize_halstead(p: &QProgram) -> HalsteadTokens {
    let mut tokens = HalsteadTokens::default();
    for t in &p.tokens {
        let bucket = match t.role {
            TokenRole::Operator => &mut tokens.operators,
            TokenRole::Operand => &mut tokens.operands,
        };
        *bucket.entry(t.text.clone()).or_default() += 1;
    }
    tokens
}

pub fn compute_halstead(p: &QProgram) -> HalsteadMetrics {
    let t = tokenize_halstead(p);
    HalsteadMetrics::from_counts(
        t.unique_operators(),
        t.unique_operands(),
        t.total_operators(),
        t.total_operands(),
    )
}
