use super::{JointId, JointTrajectorySet};
use crate::error::{Error, Result};

/// Phase portrait `(angle, angular velocity)` of one joint.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCycle {
    pub points: Vec<(f64, f64)>,
    /// Euclidean distance between the first and last portrait points.
    pub closure_gap: f64,
}

/// Velocities by central differences, one-sided at the ends, per `tc`.
pub fn limit_cycle(traj: &JointTrajectorySet, joint: JointId) -> Result<LimitCycle> {
    phase_portrait(traj.joint(joint), traj.tc)
}

pub(crate) fn phase_portrait(angles: &[f64], tc: f64) -> Result<LimitCycle> {
    let n = angles.len();
    if n < 3 {
        return Err(Error::Size { needed: 3, got: n });
    }
    let velocity = |i: usize| match i {
        0 => (angles[1] - angles[0]) / tc,
        i if i == n - 1 => (angles[n - 1] - angles[n - 2]) / tc,
        i => (angles[i + 1] - angles[i - 1]) / (2.0 * tc),
    };
    let points: Vec<(f64, f64)> = (0..n).map(|i| (angles[i], velocity(i))).collect();
    let (a, b) = (points[0], points[n - 1]);
    let closure_gap = (a.0 - b.0).hypot(a.1 - b.1);
    Ok(LimitCycle {
        points,
        closure_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_has_zero_velocity() {
        let lc = phase_portrait(&[4.0; 10], 0.1).unwrap();
        assert!(lc.points.iter().all(|&(a, v)| a == 4.0 && v == 0.0));
        assert_eq!(lc.closure_gap, 0.0);
    }

    #[test]
    fn sine_portrait_is_near_ellipse() {
        // 101 samples span exactly one period
        let tc = 0.016;
        let n = 101;
        let w = 2.0 * PI / 1.6;
        let angles: Vec<f64> = (0..n).map(|i| (w * i as f64 * tc).sin()).collect();
        let lc = phase_portrait(&angles, tc).unwrap();
        for i in 1..n - 1 {
            let exact = w * (w * i as f64 * tc).cos();
            assert!((lc.points[i].1 - exact).abs() < 0.01 * w);
            // (a/1)² + (v/w)² ≈ 1
            let (a, v) = lc.points[i];
            assert!((a * a + (v / w) * (v / w) - 1.0).abs() < 0.01);
        }
        let max_second_diff = angles
            .windows(3)
            .map(|s| (s[2] - 2.0 * s[1] + s[0]).abs())
            .fold(0.0, f64::max);
        assert!(lc.closure_gap < 2.0 * max_second_diff);
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            phase_portrait(&[1.0, 2.0], 0.1),
            Err(Error::Size { needed: 3, got: 2 })
        ));
    }
}
