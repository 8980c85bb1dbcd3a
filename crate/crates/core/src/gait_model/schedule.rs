use serde::{Deserialize, Serialize};

use super::{GaitPhase, CYCLE_LENGTH};
use crate::error::{Error, Result};

/// Guard thresholds of the edge set `LR → MST → … → TSW → LR`.
const GUARD_BOUNDARIES: [f64; 7] = [0.5, 0.733, 0.9833, 1.1167, 1.2667, 1.4333, 1.600];

/// Phase-end percentages of the data-generation routine.
const PERCENT_BOUNDARIES: [f64; 7] = [10.0, 30.0, 50.0, 60.0, 73.0, 87.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchedulePreset {
    Guard,
    Percent,
}

impl std::str::FromStr for SchedulePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "guard" => Ok(SchedulePreset::Guard),
            "percent" => Ok(SchedulePreset::Percent),
            other => Err(Error::Config(format!("unknown schedule {other:?}"))),
        }
    }
}

/// Seven strictly increasing phase-end coordinates; the last one is the cycle length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSchedule {
    boundaries: [f64; 7],
}

impl Default for PhaseSchedule {
    fn default() -> Self {
        Self::guard()
    }
}

impl PhaseSchedule {
    pub fn new(boundaries: [f64; 7]) -> Result<Self> {
        if !boundaries.iter().all(|b| b.is_finite()) || boundaries[0] <= 0.0 {
            return Err(Error::Config(format!(
                "phase boundaries must be finite and positive: {boundaries:?}"
            )));
        }
        if boundaries.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!(
                "phase boundaries must be strictly increasing: {boundaries:?}"
            )));
        }
        Ok(PhaseSchedule { boundaries })
    }

    pub fn guard() -> Self {
        PhaseSchedule {
            boundaries: GUARD_BOUNDARIES,
        }
    }

    /// Percent preset scaled onto the guard cycle length.
    pub fn percent() -> Self {
        PhaseSchedule {
            boundaries: PERCENT_BOUNDARIES.map(|p| p / 100.0 * CYCLE_LENGTH),
        }
    }

    pub fn preset(preset: SchedulePreset) -> Self {
        match preset {
            SchedulePreset::Guard => Self::guard(),
            SchedulePreset::Percent => Self::percent(),
        }
    }

    pub fn boundaries(&self) -> &[f64; 7] {
        &self.boundaries
    }

    pub fn cycle_length(&self) -> f64 {
        self.boundaries[6]
    }

    /// Closed coordinate interval `[b_{k-1}, b_k]` of a phase (`b_0 = 0`).
    pub fn interval(&self, phase: GaitPhase) -> (f64, f64) {
        let k = phase.index();
        let lo = if k == 0 { 0.0 } else { self.boundaries[k - 1] };
        (lo, self.boundaries[k])
    }
}

/// Active phase at cycle coordinate `x`.
///
/// Guards are strict, so a coordinate sitting exactly on a boundary still
/// belongs to the earlier phase. Coordinates past the cycle end wrap around.
pub fn phase_of(x: f64, schedule: &PhaseSchedule) -> Result<GaitPhase> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "cycle coordinate must be finite and non-negative, got {x}"
        )));
    }
    let len = schedule.cycle_length();
    let x = if x > len { x % len } else { x };
    let k = schedule
        .boundaries
        .iter()
        .position(|&b| x <= b)
        .unwrap_or(6);
    Ok(GaitPhase::ALL[k])
}
