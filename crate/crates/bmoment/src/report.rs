//! Pass/fail reports for structural validation.

use serde::{Deserialize, Serialize};

/// Outcome of one numbered condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    /// Short label such as `"i"` or `"iii"`.
    pub condition: String,
    pub description: String,
    pub passed: bool,
    /// Vertices, edges or constraints responsible for a failure.
    pub offending: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<ConditionCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub(crate) fn push(&mut self, condition: &str, description: &str, offending: Vec<String>) {
        self.checks.push(ConditionCheck {
            condition: condition.to_string(),
            description: description.to_string(),
            passed: offending.is_empty(),
            offending,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_conditions(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.condition.as_str())
            .collect()
    }

    pub fn check(&self, condition: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.condition == condition)
    }
}
