use serde::Serialize;

use super::{AnovaTable, BiometricReport, ConfusionReport, CvSummary};
use crate::error::Result;

/// JSON metrics bundle written by the classification verbs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub class_names: Vec<String>,
    pub confusion: ConfusionReport,
    pub biometric: BiometricReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cv: Option<CvSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anova: Option<AnovaTable>,
}

impl MetricsReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
