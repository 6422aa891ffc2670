use serde::{Deserialize, Serialize};

use super::{check_unique, DesignError, Document};

/// A named member with a quantum flag: attributes, methods and
/// interfaces share this shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QumlAttribute {
    pub name: String,
    pub quantum: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Variable,
    Operation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QumlElement {
    pub name: String,
    pub kind: ElementKind,
    pub quantum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QumlClass {
    pub name: String,
    pub quantum: bool,
    #[serde(default)]
    pub attributes: Vec<QumlAttribute>,
    #[serde(default)]
    pub methods: Vec<QumlAttribute>,
    #[serde(default)]
    pub interfaces: Vec<QumlAttribute>,
    #[serde(default)]
    pub elements: Vec<QumlElement>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QumlModel {
    pub classes: Vec<QumlClass>,
}

pub(super) fn parse(doc: &Document<'_>) -> Result<QumlModel, DesignError> {
    let model: QumlModel = doc.deserialize()?;
    check_unique(
        doc,
        model
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("/classes/{i}/name"), c.name.as_str())),
        "class",
    )?;
    Ok(model)
}

/// Specification size of a Q-UML model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ThetaMetrics {
    /// Quantum classes.
    pub theta1: usize,
    /// Quantum elements (variables and operations).
    pub theta2: usize,
    /// Quantum interfaces.
    pub theta3: usize,
    /// Quantum attributes.
    pub theta4: usize,
    /// Quantum methods.
    pub theta5: usize,
}

pub fn compute_theta(m: &QumlModel) -> ThetaMetrics {
    let quantum = |items: &[QumlAttribute]| items.iter().filter(|a| a.quantum).count();
    let mut t = ThetaMetrics::default();
    for c in &m.classes {
        t.theta1 += c.quantum as usize;
        t.theta2 += c.elements.iter().filter(|e| e.quantum).count();
        t.theta3 += quantum(&c.interfaces);
        t.theta4 += quantum(&c.attributes);
        t.theta5 += quantum(&c.methods);
    }
    t
}
