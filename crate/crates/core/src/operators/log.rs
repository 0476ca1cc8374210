//! Audit trail of the mutations applied to a chart.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::model::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    Jitter,
    Eliminate,
    Simplify,
    MergeTicks,
    SemanticTransition,
}

/// Clutter measured right before and after one operator application.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricDelta {
    pub collision_before: f64,
    pub collision_after: f64,
    pub violations_before: usize,
    pub violations_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorLogEntry {
    pub operator: OperatorKind,
    pub affected: Vec<ElementId>,
    /// Operator-specific parameters, as a JSON object.
    pub params: Value,
    pub metrics: MetricDelta,
}

impl OperatorLogEntry {
    pub fn new(operator: OperatorKind, affected: Vec<ElementId>, params: Value, metrics: MetricDelta) -> Self {
        Self {
            operator,
            affected,
            params,
            metrics,
        }
    }
}
