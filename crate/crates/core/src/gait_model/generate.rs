use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{phase_of, FieldBank, GaitPhase, JointId, PhaseSchedule, DEFAULT_TC};
use crate::error::{Error, Result};

/// Body parameters and sampling settings of the walker model.
///
/// The link lengths and masses are carried for stick-figure output and
/// downstream consumers; the polynomial generator itself only reads `tc`,
/// `schedule` and `crossfade`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitModelConfig {
    /// Thigh length (m).
    pub l1: f64,
    /// Shank length (m).
    pub l2: f64,
    /// Foot length (m).
    pub l3: f64,
    /// Torso mass (g).
    pub m1: f64,
    /// Shank mass (g).
    pub m2: f64,
    /// Swing mass (g).
    pub m3: f64,
    /// Gravitational acceleration (m/s²).
    pub g: f64,
    /// Slope of the walking plane (rad).
    pub gamma: f64,
    /// Sample period in cycle units.
    pub tc: f64,
    pub schedule: PhaseSchedule,
    /// Blend adjacent phase fields over ±2 samples around each boundary.
    pub crossfade: bool,
}

impl Default for GaitModelConfig {
    fn default() -> Self {
        GaitModelConfig {
            l1: 0.5,
            l2: 0.4,
            l3: 0.2,
            m1: 30_000.0,
            m2: 5_000.0,
            m3: 10_000.0,
            g: 9.81,
            gamma: 0.0,
            tc: DEFAULT_TC,
            schedule: PhaseSchedule::guard(),
            crossfade: false,
        }
    }
}

impl GaitModelConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("m1", self.m1),
            ("m2", self.m2),
            ("m3", self.m3),
            ("tc", self.tc),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.g.is_finite() || !self.gamma.is_finite() {
            return Err(Error::Config("g and gamma must be finite".into()));
        }
        Ok(())
    }
}

/// Six joint-angle series on one shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTrajectorySet {
    pub tc: f64,
    pub grid: Vec<f64>,
    pub phases: Vec<GaitPhase>,
    /// Indexed by [`JointId::index`], degrees.
    pub angles: [Vec<f64>; 6],
}

impl JointTrajectorySet {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn joint(&self, joint: JointId) -> &[f64] {
        &self.angles[joint.index()]
    }

    /// Contiguous `(phase, start, end)` index runs, end exclusive.
    pub fn segments(&self) -> Vec<(GaitPhase, usize, usize)> {
        let mut out: Vec<(GaitPhase, usize, usize)> = Vec::new();
        for (i, &p) in self.phases.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == p => last.2 = i + 1,
                _ => out.push((p, i, i + 1)),
            }
        }
        out
    }
}

/// C0 gap between adjacent phase fields at their shared boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryJump {
    pub joint: JointId,
    pub from: GaitPhase,
    pub to: GaitPhase,
    pub x: f64,
    pub jump: f64,
}

impl Serialize for JointId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaitCycle {
    pub trajectory: JointTrajectorySet,
    pub boundaries: Vec<BoundaryJump>,
}

impl GaitCycle {
    pub fn max_jump(&self, joint: JointId) -> f64 {
        self.boundaries
            .iter()
            .filter(|b| b.joint == joint)
            .map(|b| b.jump)
            .fold(0.0, f64::max)
    }
}

/// Samples every joint over one cycle on `{0, tc, 2tc, …}` up to the cycle
/// length, using the field of whichever phase is active at each sample.
pub fn generate_gait_cycle(bank: &FieldBank, config: &GaitModelConfig) -> Result<GaitCycle> {
    config.validate()?;
    bank.ensure_complete()?;
    let schedule = &config.schedule;
    let bank = bank.with_schedule(schedule)?;
    let len = schedule.cycle_length();

    let n = (len / config.tc + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..n).map(|i| i as f64 * config.tc).collect();
    let phases = grid
        .iter()
        .map(|&x| phase_of(x, schedule))
        .collect::<Result<Vec<_>>>()?;

    let field = |j: JointId, p: GaitPhase| bank.get(j, p).expect("bank checked complete");

    let mut angles: [Vec<f64>; 6] = Default::default();
    for joint in JointId::ALL {
        angles[joint.index()] = grid
            .iter()
            .zip(&phases)
            .map(|(&x, &p)| field(joint, p).eval(x))
            .collect();
    }

    let mut boundaries = Vec::with_capacity(36);
    for joint in JointId::ALL {
        for k in 0..6 {
            let from = GaitPhase::ALL[k];
            let to = from.next();
            let x = schedule.boundaries()[k];
            let jump = (field(joint, from).eval(x) - field(joint, to).eval(x)).abs();
            boundaries.push(BoundaryJump {
                joint,
                from,
                to,
                x,
                jump,
            });
        }
    }

    if config.crossfade {
        for k in 0..6 {
            let from = GaitPhase::ALL[k];
            let to = from.next();
            // first sample of the incoming phase
            let Some(j) = phases.iter().position(|&p| p == to) else {
                continue;
            };
            let lo = j.saturating_sub(2);
            let hi = (j + 2).min(n);
            for joint in JointId::ALL {
                let (a, b) = (field(joint, from), field(joint, to));
                for i in lo..hi {
                    let w = ((i as f64 - j as f64) + 2.5) / 4.0;
                    let x = grid[i];
                    angles[joint.index()][i] = (1.0 - w) * a.eval(x) + w * b.eval(x);
                }
            }
        }
    }

    Ok(GaitCycle {
        trajectory: JointTrajectorySet {
            tc: config.tc,
            grid,
            phases,
            angles,
        },
        boundaries,
    })
}

/// Tab-separated trajectory: a header row, then one row per grid point with
/// six decimal places.
pub fn write_trajectory_tsv<W: Write>(traj: &JointTrajectorySet, mut out: W) -> Result<()> {
    write!(out, "time")?;
    for j in JointId::ALL {
        write!(out, "\t{}", j.name())?;
    }
    writeln!(out)?;
    for (i, x) in traj.grid.iter().enumerate() {
        write!(out, "{x:.6}")?;
        for j in JointId::ALL {
            write!(out, "\t{:.6}", traj.angles[j.index()][i])?;
        }
        writeln!(out)?;
    }
    Ok(())
}
