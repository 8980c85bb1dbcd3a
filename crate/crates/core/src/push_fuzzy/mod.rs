//! Two-stage fuzzy push-recovery controller.
//!
//! Stage one maps a push (force magnitude and direction) to roll/pitch
//! reaction degrees; stage two maps the reaction grid to a recovery
//! strategy. Both stages use min for rule firing and max for aggregation.

mod fis;
mod membership;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use fis::{fis1_infer, fis2_infer, recover, recover_planar, recover_with};
pub use membership::{fuzzify_force, ForceDegrees, Trapezoid};
pub use tables::{
    lookup_strategy, parse_reaction, validate_against_ranges, Fis1Rule, JointRangeRow, LookupRow,
    PushTables, ValidationOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ForceLevel {
    Small,
    Average,
    Large,
}

impl ForceLevel {
    pub const ALL: [ForceLevel; 3] = [ForceLevel::Small, ForceLevel::Average, ForceLevel::Large];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for ForceLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "small" => Ok(ForceLevel::Small),
            "average" | "medium" => Ok(ForceLevel::Average),
            "large" => Ok(ForceLevel::Large),
            _ => Err(Error::Config(format!("unknown force level {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axis {
    Roll,
    Pitch,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "roll" => Ok(Axis::Roll),
            "pitch" => Ok(Axis::Pitch),
            _ => Err(Error::Config(format!("unknown axis {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Left,
    Right,
    Forward,
    Backward,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Left,
        Direction::Right,
        Direction::Forward,
        Direction::Backward,
    ];

    /// Reaction axis a push in this direction excites.
    pub fn axis(self) -> Axis {
        match self {
            Direction::Left | Direction::Right => Axis::Roll,
            Direction::Forward | Direction::Backward => Axis::Pitch,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::Config(format!(
                "direction must be left, right, forward or backward, got {s:?}"
            ))),
        }
    }
}

/// Membership of the push direction in each direction set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct DirectionDegrees {
    pub left: f64,
    pub right: f64,
    pub forward: f64,
    pub backward: f64,
}

impl DirectionDegrees {
    pub fn crisp(d: Direction) -> Self {
        let mut out = DirectionDegrees::default();
        match d {
            Direction::Left => out.left = 1.0,
            Direction::Right => out.right = 1.0,
            Direction::Forward => out.forward = 1.0,
            Direction::Backward => out.backward = 1.0,
        }
        out
    }

    /// Degree of the Left-or-Right / Forward-or-Backward antecedent.
    pub fn axis_degree(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Roll => self.left.max(self.right),
            Axis::Pitch => self.forward.max(self.backward),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceInput {
    /// Newtons, ≥ 0.
    pub magnitude: f64,
    pub direction: Direction,
}

/// Reaction degrees, indexed `[axis][level]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ReactionMembership {
    pub degrees: [[f64; 3]; 2],
}

impl ReactionMembership {
    pub fn get(&self, axis: Axis, level: ForceLevel) -> f64 {
        self.degrees[axis as usize][level.index()]
    }

    pub fn set(&mut self, axis: Axis, level: ForceLevel, v: f64) {
        self.degrees[axis as usize][level.index()] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().flatten().all(|&d| d == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = *self;
        for d in out.degrees.iter_mut().flatten() {
            *d *= c;
        }
        out
    }
}

impl Serialize for ReactionMembership {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(6))?;
        for axis in [Axis::Roll, Axis::Pitch] {
            for level in ForceLevel::ALL {
                m.serialize_entry(&format!("{level:?}{axis:?}"), &self.get(axis, level))?;
            }
        }
        m.end()
    }
}

/// Recovery strategies, in increasing severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Strategy {
    Ankle,
    Knee,
    Hip,
    FallFrontal,
    FallSideways,
    Fall,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Ankle,
        Strategy::Knee,
        Strategy::Hip,
        Strategy::FallFrontal,
        Strategy::FallSideways,
        Strategy::Fall,
    ];

    pub fn is_fall(self) -> bool {
        matches!(
            self,
            Strategy::FallFrontal | Strategy::FallSideways | Strategy::Fall
        )
    }

    /// Severity class: 0 ankle, 1 knee, 2 hip, 3 any fall.
    pub fn severity(self) -> usize {
        (self as usize).min(3)
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', ' '], "_").as_str() {
            "ankle" => Ok(Strategy::Ankle),
            "knee" => Ok(Strategy::Knee),
            "hip" => Ok(Strategy::Hip),
            "fall_frontal" | "fallfrontal" => Ok(Strategy::FallFrontal),
            "fall_sideways" | "fallsideways" => Ok(Strategy::FallSideways),
            "fall" => Ok(Strategy::Fall),
            _ => Err(Error::Config(format!("unknown strategy {s:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FallState {
    Fall,
    NotFall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushResponse {
    pub reaction: ReactionMembership,
    pub strategy: Strategy,
    pub state: FallState,
    pub strategy_degrees: BTreeMap<Strategy, f64>,
}
