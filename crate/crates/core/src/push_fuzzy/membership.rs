use serde::{Deserialize, Serialize};

use super::{ForceLevel, PushTables};
use crate::error::{Error, Result};

/// Trapezoidal membership `[a, b, c, d]`: rising on `[a, b]`, 1 on `[b, c]`,
/// falling on `[c, d]`. `a = b` or `c = d` gives a vertical shoulder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trapezoid(pub [f64; 4]);

impl Trapezoid {
    pub fn degree(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.0;
        if x < a || x > d {
            0.0
        } else if x < b {
            (x - a) / (b - a)
        } else if x <= c {
            1.0
        } else {
            (d - x) / (d - c)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ForceDegrees {
    pub small: f64,
    pub average: f64,
    pub large: f64,
}

impl ForceDegrees {
    pub fn get(&self, level: ForceLevel) -> f64 {
        match level {
            ForceLevel::Small => self.small,
            ForceLevel::Average => self.average,
            ForceLevel::Large => self.large,
        }
    }
}

/// Degrees of `f` newtons in the small, average and large force sets.
/// Forces beyond the recovery limit are rejected.
pub fn fuzzify_force(f: f64, tables: &PushTables) -> Result<ForceDegrees> {
    if !f.is_finite() || f < 0.0 {
        return Err(Error::Domain(format!(
            "force must be finite and non-negative, got {f}"
        )));
    }
    if f > tables.recovery_limit {
        return Err(Error::RecoveryImpossible(f));
    }
    let [s, a, l] = &tables.force_sets;
    Ok(ForceDegrees {
        small: s.degree(f),
        average: a.degree(f),
        large: l.degree(f),
    })
}
