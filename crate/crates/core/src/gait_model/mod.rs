//! Hybrid-automaton gait engine.
//!
//! A gait cycle is the normalized coordinate `x ∈ [0, 1.6]` split into seven
//! sub-phases. Each of the six sagittal leg joints carries one polynomial
//! vector field per sub-phase; the active field is selected by the phase
//! guards and evaluated on the global coordinate.

mod field;
mod fit;
mod generate;
mod limit_cycle;
mod ranges;
mod schedule;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use field::{FieldBank, PolynomialVectorField};
pub use fit::{fit_vector_field, overfit_band, FitResult, OverfitBand};
pub use generate::{
    generate_gait_cycle, write_trajectory_tsv, BoundaryJump, GaitCycle, GaitModelConfig,
    JointTrajectorySet,
};
pub use limit_cycle::{limit_cycle, LimitCycle};
pub use ranges::{
    validate_ranges, Interval, RangeRow, RangeTable, RangeViolation, ValidationReport,
};
pub use schedule::{phase_of, PhaseSchedule, SchedulePreset};

/// Length of one normalized gait cycle.
pub const CYCLE_LENGTH: f64 = 1.6;

/// Default sampling period of the generator, in cycle units.
pub const DEFAULT_TC: f64 = 0.0167;

/// The seven gait sub-phases, in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GaitPhase {
    LR,
    MST,
    TS,
    PS,
    IS,
    MSW,
    TSW,
}

impl GaitPhase {
    pub const ALL: [GaitPhase; 7] = [
        GaitPhase::LR,
        GaitPhase::MST,
        GaitPhase::TS,
        GaitPhase::PS,
        GaitPhase::IS,
        GaitPhase::MSW,
        GaitPhase::TSW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Successor along the edge set; `TSW` wraps back to `LR`.
    pub fn next(self) -> Self {
        Self::ALL[(self.index() + 1) % 7]
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GaitPhase::LR => "LR",
            GaitPhase::MST => "MST",
            GaitPhase::TS => "TS",
            GaitPhase::PS => "PS",
            GaitPhase::IS => "IS",
            GaitPhase::MSW => "MSW",
            GaitPhase::TSW => "TSW",
        }
    }
}

impl fmt::Display for GaitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GaitPhase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaitPhase::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown gait phase {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Joint {
    Hip,
    Knee,
    Ankle,
}

/// One of the six sagittal leg joints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointId {
    pub side: Side,
    pub joint: Joint,
}

impl JointId {
    pub const LEFT_HIP: JointId = JointId::new(Side::Left, Joint::Hip);
    pub const RIGHT_HIP: JointId = JointId::new(Side::Right, Joint::Hip);
    pub const LEFT_KNEE: JointId = JointId::new(Side::Left, Joint::Knee);
    pub const RIGHT_KNEE: JointId = JointId::new(Side::Right, Joint::Knee);
    pub const LEFT_ANKLE: JointId = JointId::new(Side::Left, Joint::Ankle);
    pub const RIGHT_ANKLE: JointId = JointId::new(Side::Right, Joint::Ankle);

    /// Column order of the trajectory file.
    pub const ALL: [JointId; 6] = [
        JointId::LEFT_HIP,
        JointId::RIGHT_HIP,
        JointId::LEFT_KNEE,
        JointId::RIGHT_KNEE,
        JointId::LEFT_ANKLE,
        JointId::RIGHT_ANKLE,
    ];

    pub const fn new(side: Side, joint: Joint) -> Self {
        JointId { side, joint }
    }

    /// Position in [`JointId::ALL`].
    pub fn index(self) -> usize {
        let j = match self.joint {
            Joint::Hip => 0,
            Joint::Knee => 1,
            Joint::Ankle => 2,
        };
        2 * j + usize::from(self.side == Side::Right)
    }

    pub fn name(self) -> &'static str {
        match (self.side, self.joint) {
            (Side::Left, Joint::Hip) => "left_hip",
            (Side::Right, Joint::Hip) => "right_hip",
            (Side::Left, Joint::Knee) => "left_knee",
            (Side::Right, Joint::Knee) => "right_knee",
            (Side::Left, Joint::Ankle) => "left_ankle",
            (Side::Right, Joint::Ankle) => "right_ankle",
        }
    }
}

impl fmt::Display for JointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JointId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        JointId::ALL
            .into_iter()
            .find(|j| j.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown joint {s:?}")))
    }
}
