use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const REACH_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLinkGeometry {
    /// Proximal (thigh) link length.
    pub l1: f64,
    /// Distal (shank) link length.
    pub l2: f64,
}

impl TwoLinkGeometry {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if !(l1.is_finite() && l1 > 0.0 && l2.is_finite() && l2 > 0.0) {
            return Err(Error::Config(format!(
                "link lengths must be positive, got {l1} and {l2}"
            )));
        }
        Ok(TwoLinkGeometry { l1, l2 })
    }
}

impl Default for TwoLinkGeometry {
    /// Thigh 5, shank 4.
    fn default() -> Self {
        TwoLinkGeometry { l1: 5.0, l2: 4.0 }
    }
}

/// Knee branch. `Down` takes the positive sine root (θ2 ≥ 0).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elbow {
    Up,
    #[default]
    Down,
}

impl FromStr for Elbow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Elbow::Up),
            "down" => Ok(Elbow::Down),
            _ => Err(Error::Config(format!(
                "elbow must be up or down, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoLinkPose {
    pub elbow: (f64, f64),
    pub tip: (f64, f64),
}

/// Joint angles `(θ1, θ2)` in radians placing the tip at `(x, y)`.
pub fn ik_two_link(x: f64, y: f64, geom: &TwoLinkGeometry, elbow: Elbow) -> Result<(f64, f64)> {
    let TwoLinkGeometry { l1, l2 } = *geom;
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain("non-finite target".into()));
    }
    let r = x.hypot(y);
    if r > l1 + l2 + REACH_SLACK || r < (l1 - l2).abs() - REACH_SLACK {
        return Err(Error::Unreachable { x, y, l1, l2 });
    }
    let c = ((x * x + y * y - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)).clamp(-1.0, 1.0);
    let root = (1.0 - c * c).sqrt();
    let s = match elbow {
        Elbow::Down => root,
        Elbow::Up => -root,
    };
    Ok(combine(x, y, l1, l2, c, s))
}

fn combine(x: f64, y: f64, l1: f64, l2: f64, c: f64, s: f64) -> (f64, f64) {
    let k1 = l1 + l2 * c;
    let k2 = l2 * s;
    (y.atan2(x) - k2.atan2(k1), s.atan2(c))
}

/// Batch inverse kinematics with the knee cosine divided by its batch maximum.
///
/// Every cosine is `tmp[i] / max(tmp)`; the positive sine root is used
/// throughout. Ratios outside `[-1, 1]` are clamped.
pub fn ik_alg1_batch(
    xs: &[f64],
    ys: &[f64],
    geom: &TwoLinkGeometry,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.is_empty() {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    let TwoLinkGeometry { l1, l2 } = *geom;
    let tmp: Vec<f64> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x * x + y * y - l1 * l1 - l2 * l2) / (2.0 * l1 * l2))
        .collect();
    let tmp_max = tmp.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if tmp_max == 0.0 || !tmp_max.is_finite() {
        return Err(Error::Degenerate(format!(
            "batch maximum of the knee cosine is {tmp_max}"
        )));
    }
    let mut theta1 = Vec::with_capacity(xs.len());
    let mut theta2 = Vec::with_capacity(xs.len());
    for ((x, y), t) in xs.iter().zip(ys).zip(&tmp) {
        let c = (t / tmp_max).clamp(-1.0, 1.0);
        let s = (1.0 - c * c).sqrt();
        let (a, b) = combine(*x, *y, l1, l2, c, s);
        theta1.push(a);
        theta2.push(b);
    }
    Ok((theta1, theta2))
}

pub fn fk_two_link(theta1: f64, theta2: f64, geom: &TwoLinkGeometry) -> TwoLinkPose {
    let elbow = (geom.l1 * theta1.cos(), geom.l1 * theta1.sin());
    let phi = theta1 + theta2;
    TwoLinkPose {
        elbow,
        tip: (elbow.0 + geom.l2 * phi.cos(), elbow.1 + geom.l2 * phi.sin()),
    }
}
