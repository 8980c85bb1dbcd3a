use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GaitPhase, JointId, JointTrajectorySet};
use crate::error::Result;

/// Closed interval with `min <= max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    /// Orders the two endpoints, whichever way round they were given.
    pub fn normalized(a: f64, b: f64) -> Self {
        Interval {
            min: a.min(b),
            max: a.max(b),
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.min <= v && v <= self.max
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.min + self.max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeRow {
    pub label: String,
    /// `None` for rows that do not correspond to a generator phase.
    pub phase: Option<GaitPhase>,
    pub intervals: BTreeMap<JointId, Interval>,
}

/// Admissible joint-angle intervals per gait phase.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeTable {
    pub rows: Vec<RangeRow>,
}

#[derive(Deserialize)]
struct RangeFile {
    rows: Vec<RangeFileRow>,
}

#[derive(Deserialize)]
struct RangeFileRow {
    label: String,
    phase: Option<String>,
    #[serde(flatten)]
    joints: BTreeMap<String, (f64, f64)>,
}

impl RangeTable {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: RangeFile = serde_json::from_str(s)?;
        let rows = file
            .rows
            .into_iter()
            .map(|r| {
                let phase = r.phase.as_deref().map(str::parse).transpose()?;
                let intervals = r
                    .joints
                    .into_iter()
                    .map(|(k, (a, b))| Ok((k.parse()?, Interval::normalized(a, b))))
                    .collect::<Result<_>>()?;
                Ok(RangeRow {
                    label: r.label,
                    phase,
                    intervals,
                })
            })
            .collect::<Result<_>>()?;
        Ok(RangeTable { rows })
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn row_for(&self, phase: GaitPhase) -> Option<&RangeRow> {
        self.rows.iter().find(|r| r.phase == Some(phase))
    }

    pub fn row_labeled(&self, label: &str) -> Option<&RangeRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn interval(&self, phase: GaitPhase, joint: JointId) -> Option<Interval> {
        self.row_for(phase)?.intervals.get(&joint).copied()
    }

    /// Re-applies endpoint ordering; a no-op on an already loaded table.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for iv in row.intervals.values_mut() {
                *iv = Interval::normalized(iv.min, iv.max);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeViolation {
    pub index: usize,
    pub x: f64,
    pub phase: GaitPhase,
    pub joint: JointId,
    pub angle: f64,
    pub interval: Interval,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<RangeViolation>,
    /// Samples checked against some tabulated interval.
    pub checked: usize,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violation counts per (phase, joint).
    pub fn summary(&self) -> BTreeMap<(GaitPhase, JointId), usize> {
        let mut out = BTreeMap::new();
        for v in &self.violations {
            *out.entry((v.phase, v.joint)).or_insert(0) += 1;
        }
        out
    }
}

/// Flags every sample whose angle lies outside its phase's interval.
/// Joints without a tabulated interval for a phase are not checked.
pub fn validate_ranges(traj: &JointTrajectorySet, ranges: &RangeTable) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, (&x, &phase)) in traj.grid.iter().zip(&traj.phases).enumerate() {
        let Some(row) = ranges.row_for(phase) else {
            continue;
        };
        for (&joint, &interval) in &row.intervals {
            let angle = traj.angles[joint.index()][i];
            report.checked += 1;
            if !interval.contains(angle) {
                report.violations.push(RangeViolation {
                    index: i,
                    x,
                    phase,
                    joint,
                    angle,
                    interval,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn flat_trajectory(table: &RangeTable) -> JointTrajectorySet {
        let phases: Vec<GaitPhase> = GaitPhase::ALL.to_vec();
        let grid: Vec<f64> = (0..7).map(|i| i as f64 * 0.2).collect();
        let mut angles: [Vec<f64>; 6] = Default::default();
        for j in JointId::ALL {
            angles[j.index()] = phases
                .iter()
                .map(|&p| table.interval(p, j).map_or(0.0, |iv| iv.midpoint()))
                .collect();
        }
        JointTrajectorySet {
            tc: 0.2,
            grid,
            phases,
            angles,
        }
    }

    #[test]
    fn midpoints_pass() {
        let table = fixtures::range_table();
        let report = validate_ranges(&flat_trajectory(&table), &table);
        assert!(report.is_empty());
        assert_eq!(report.checked, 7 * 4);
    }

    #[test]
    fn wild_sample_flagged() {
        let table = fixtures::range_table();
        let mut traj = flat_trajectory(&table);
        traj.angles[JointId::RIGHT_KNEE.index()][3] = 1000.0;
        let report = validate_ranges(&traj, &table);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].phase, GaitPhase::PS);
        assert_eq!(report.summary()[&(GaitPhase::PS, JointId::RIGHT_KNEE)], 1);
    }

    #[test]
    fn initial_phase_left_hip_is_order_normalized() {
        let table = fixtures::range_table();
        let iv = table.row_labeled("Initial Phase").unwrap().intervals[&JointId::LEFT_HIP];
        assert_eq!(
            iv,
            Interval {
                min: -17.0965,
                max: -7.576
            }
        );
    }

    #[test]
    fn normalization_is_idempotent() {
        let table = fixtures::range_table();
        assert_eq!(table.normalized(), table);
        assert_eq!(table.normalized().normalized(), table.normalized());
    }
}
