use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Axis, ForceLevel, PushResponse, Strategy, Trapezoid};
use crate::error::{Error, Result};
use crate::gait_model::JointId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fis1Rule {
    pub force: ForceLevel,
    /// Axis of the direction antecedent (Left/Right is roll).
    pub axis: Axis,
    pub reaction_level: ForceLevel,
    pub reaction_axis: Axis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookupRow {
    /// Force band; blank rows inherit the band above.
    pub band: ForceLevel,
    pub reaction: (ForceLevel, ForceLevel),
    pub reaction_text: String,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointRangeRow {
    pub band: ForceLevel,
    pub strategy: Strategy,
    /// `(lo, hi)` per joint, indexed by [`JointId::index`].
    pub ranges: [(f64, f64); 6],
}

impl JointRangeRow {
    pub fn contains(&self, angles: &[f64; 6]) -> bool {
        self.ranges
            .iter()
            .zip(angles)
            .all(|(&(lo, hi), &a)| a >= lo && a <= hi)
    }
}

/// Rule and reference tables for the push-recovery controller.
#[derive(Debug, Clone, PartialEq)]
pub struct PushTables {
    /// Small, average, large.
    pub force_sets: [Trapezoid; 3],
    /// Supports `[lo, hi]` of the three force bands.
    pub supports: [(f64, f64); 3],
    pub recovery_limit: f64,
    pub fis1: Vec<Fis1Rule>,
    /// Strategy indexed `[roll][pitch]`.
    pub fis2: [[Strategy; 3]; 3],
    pub lookup: Vec<LookupRow>,
    pub validation: Vec<JointRangeRow>,
}

#[derive(Deserialize)]
struct PushFile {
    force_sets: BTreeMap<String, ForceSetRow>,
    recovery_limit: f64,
    fis1: Vec<Fis1Row>,
    fis2: Vec<Fis2Row>,
    lookup: Vec<LookupFileRow>,
    validation: Vec<BTreeMap<String, serde_json::Value>>,
}

#[derive(Deserialize)]
struct ForceSetRow {
    support: [f64; 2],
    trapezoid: [f64; 4],
}

#[derive(Deserialize)]
struct Fis1Row {
    force: String,
    direction: String,
    reaction: String,
}

#[derive(Deserialize)]
struct Fis2Row {
    roll: String,
    pitch: String,
    strategy: String,
}

#[derive(Deserialize)]
struct LookupFileRow {
    band: Option<String>,
    reaction: String,
    strategy: String,
}

fn parse_reaction_token(s: &str) -> Result<(ForceLevel, Axis)> {
    let (level, axis) = s
        .split_once(['_', ' '])
        .ok_or_else(|| Error::Config(format!("bad reaction term {s:?}")))?;
    Ok((level.parse()?, axis.trim().parse()?))
}

/// Parses `"<Level> Roll and <Level> Pitch"` in either order into
/// `(roll level, pitch level)`.
pub fn parse_reaction(text: &str) -> Result<(ForceLevel, ForceLevel)> {
    let lower = text.to_ascii_lowercase();
    let (a, b) = lower
        .split_once(" and ")
        .ok_or_else(|| Error::Config(format!("reaction needs two terms: {text:?}")))?;
    let (la, aa) = parse_reaction_token(a.trim())?;
    let (lb, ab) = parse_reaction_token(b.trim())?;
    match (aa, ab) {
        (Axis::Roll, Axis::Pitch) => Ok((la, lb)),
        (Axis::Pitch, Axis::Roll) => Ok((lb, la)),
        _ => Err(Error::Config(format!(
            "reaction needs one roll and one pitch term: {text:?}"
        ))),
    }
}

fn interval(v: &serde_json::Value, key: &str) -> Result<(f64, f64)> {
    let pair: [f64; 2] = serde_json::from_value(v.clone())
        .map_err(|_| Error::Config(format!("{key} must be a pair of numbers")))?;
    // printed endpoints are not always ordered
    Ok((pair[0].min(pair[1]), pair[0].max(pair[1])))
}

impl PushTables {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PushFile = serde_json::from_str(s)?;

        let mut force_sets = [Trapezoid([0.0; 4]); 3];
        let mut supports = [(0.0, 0.0); 3];
        for level in ForceLevel::ALL {
            let key = format!("{level:?}").to_ascii_lowercase();
            let row = file
                .force_sets
                .get(&key)
                .ok_or_else(|| Error::Config(format!("missing force set {key}")))?;
            let t = row.trapezoid;
            if t.windows(2).any(|w| w[1] < w[0]) {
                return Err(Error::Config(format!("trapezoid for {key} is not ordered")));
            }
            force_sets[level.index()] = Trapezoid(t);
            supports[level.index()] = (row.support[0], row.support[1]);
        }

        let mut fis1 = Vec::with_capacity(file.fis1.len());
        for row in &file.fis1 {
            let axis = match row.direction.as_str() {
                "left_right" => Axis::Roll,
                "forward_backward" => Axis::Pitch,
                other => return Err(Error::Config(format!("unknown direction group {other:?}"))),
            };
            let (reaction_level, reaction_axis) = parse_reaction_token(&row.reaction)?;
            fis1.push(Fis1Rule {
                force: row.force.parse()?,
                axis,
                reaction_level,
                reaction_axis,
            });
        }

        let mut grid: [[Option<Strategy>; 3]; 3] = [[None; 3]; 3];
        for row in &file.fis2 {
            let r: ForceLevel = row.roll.parse()?;
            let p: ForceLevel = row.pitch.parse()?;
            grid[r.index()][p.index()] = Some(row.strategy.parse()?);
        }
        let mut fis2 = [[Strategy::Ankle; 3]; 3];
        for (r, row) in grid.iter().enumerate() {
            for (p, cell) in row.iter().enumerate() {
                fis2[r][p] = cell.ok_or_else(|| {
                    Error::Config(format!(
                        "strategy grid missing {:?} roll / {:?} pitch",
                        ForceLevel::ALL[r],
                        ForceLevel::ALL[p]
                    ))
                })?;
            }
        }

        let mut lookup = Vec::with_capacity(file.lookup.len());
        let mut band: Option<ForceLevel> = None;
        for row in file.lookup {
            if let Some(b) = &row.band {
                band = Some(b.parse()?);
            }
            let band = band.ok_or_else(|| Error::Config("first lookup row has no band".into()))?;
            lookup.push(LookupRow {
                band,
                reaction: parse_reaction(&row.reaction)?,
                strategy: row.strategy.parse()?,
                reaction_text: row.reaction,
            });
        }

        let mut validation = Vec::with_capacity(file.validation.len());
        for row in &file.validation {
            let text = |k: &str| -> Result<&str> {
                row.get(k)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Config(format!("validation row missing {k}")))
            };
            let mut ranges = [(0.0, 0.0); 6];
            for j in JointId::ALL {
                let v = row
                    .get(j.name())
                    .ok_or_else(|| Error::Config(format!("validation row missing {j}")))?;
                ranges[j.index()] = interval(v, j.name())?;
            }
            validation.push(JointRangeRow {
                band: text("band")?.parse()?,
                strategy: text("strategy")?.parse()?,
                ranges,
            });
        }

        Ok(PushTables {
            force_sets,
            supports,
            recovery_limit: file.recovery_limit,
            fis1,
            fis2,
            lookup,
            validation,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Bands whose support contains `f`.
    pub fn bands_of(&self, f: f64) -> Vec<ForceLevel> {
        ForceLevel::ALL
            .into_iter()
            .filter(|l| {
                let (lo, hi) = self.supports[l.index()];
                f >= lo && f <= hi
            })
            .collect()
    }
}

impl Default for PushTables {
    fn default() -> Self {
        crate::fixtures::push_tables()
    }
}

/// Strategy from the printed lookup table for a push of `f` newtons whose
/// reaction is described as e.g. `"Average Pitch and Small Roll"`.
pub fn lookup_strategy(f: f64, reaction: &str, tables: &PushTables) -> Result<Strategy> {
    if !f.is_finite() || f < 0.0 {
        return Err(Error::Domain(format!(
            "force must be finite and non-negative, got {f}"
        )));
    }
    if f > tables.recovery_limit {
        return Err(Error::RecoveryImpossible(f));
    }
    let want = parse_reaction(reaction)?;
    let bands = tables.bands_of(f);
    tables
        .lookup
        .iter()
        .find(|row| row.reaction == want && bands.contains(&row.band))
        .map(|row| row.strategy)
        .ok_or(Error::NoDecision)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ValidationOutcome {
    /// Angles fall in a reference row whose strategy matches.
    Pass { band: ForceLevel },
    /// Angles fall in reference rows, none with the produced strategy.
    Mismatch {
        band: ForceLevel,
        expected: Strategy,
        got: Strategy,
    },
    /// Angles fall in no reference row.
    Unmatched,
}

/// Checks observed joint angles (degrees, indexed by [`JointId::index`])
/// against the reference ranges for the response's strategy.
pub fn validate_against_ranges(
    response: &PushResponse,
    angles: &[f64; 6],
    tables: &PushTables,
) -> ValidationOutcome {
    let hits: Vec<&JointRangeRow> = tables
        .validation
        .iter()
        .filter(|r| r.contains(angles))
        .collect();
    if let Some(r) = hits.iter().find(|r| r.strategy == response.strategy) {
        return ValidationOutcome::Pass { band: r.band };
    }
    match hits.first() {
        Some(r) => ValidationOutcome::Mismatch {
            band: r.band,
            expected: r.strategy,
            got: response.strategy,
        },
        None => ValidationOutcome::Unmatched,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{recover, Direction, ForceInput};
    use super::*;

    fn angles(lh: f64, lk: f64, la: f64, rh: f64, rk: f64, ra: f64) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (j, v) in [
            (JointId::LEFT_HIP, lh),
            (JointId::LEFT_KNEE, lk),
            (JointId::LEFT_ANKLE, la),
            (JointId::RIGHT_HIP, rh),
            (JointId::RIGHT_KNEE, rk),
            (JointId::RIGHT_ANKLE, ra),
        ] {
            out[j.index()] = v;
        }
        out
    }

    #[test]
    fn loads_fixture() {
        let t = PushTables::default();
        assert_eq!(t.fis1.len(), 6);
        assert_eq!(t.lookup.len(), 8);
        assert_eq!(t.validation.len(), 3);
        assert_eq!(t.lookup[1].band, ForceLevel::Small);
        assert_eq!(t.lookup[4].band, ForceLevel::Large);
        assert_eq!(t.fis2[2][2], Strategy::Fall);
    }

    #[test]
    fn reaction_text_is_order_free() {
        assert_eq!(
            parse_reaction("Average Pitch and Small Roll").unwrap(),
            parse_reaction("Small Roll and Average Pitch").unwrap()
        );
        assert!(parse_reaction("Small Roll and Large Roll").is_err());
        assert!(parse_reaction("Small Roll").is_err());
    }

    #[test]
    fn lookup_examples() {
        let t = PushTables::default();
        assert_eq!(
            lookup_strategy(6.5, "Average Pitch and Small Roll", &t).unwrap(),
            Strategy::Knee
        );
        assert_eq!(
            lookup_strategy(2.0, "Small Roll and Small Pitch", &t).unwrap(),
            Strategy::Ankle
        );
        assert_eq!(
            lookup_strategy(10.5, "Large Pitch and Large Roll", &t).unwrap(),
            Strategy::Fall
        );
        assert!(matches!(
            lookup_strategy(2.0, "Large Roll and Large Pitch", &t),
            Err(Error::NoDecision)
        ));
        assert!(matches!(
            lookup_strategy(20.0, "Small Roll and Small Pitch", &t),
            Err(Error::RecoveryImpossible(_))
        ));
    }

    #[test]
    fn validation_example() {
        let t = PushTables::default();
        let r = recover(
            ForceInput {
                magnitude: 2.0,
                direction: Direction::Backward,
            },
            &t,
        )
        .unwrap();
        let a = angles(5.5, 6.0, 2.4, -6.9, -3.3, -3.3);
        assert_eq!(
            validate_against_ranges(&r, &a, &t),
            ValidationOutcome::Pass {
                band: ForceLevel::Small
            }
        );
        let far = angles(100.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            validate_against_ranges(&r, &far, &t),
            ValidationOutcome::Unmatched
        );
        let hip = recover(
            ForceInput {
                magnitude: 10.5,
                direction: Direction::Left,
            },
            &t,
        )
        .unwrap();
        assert!(matches!(
            validate_against_ranges(&hip, &a, &t),
            ValidationOutcome::Mismatch {
                expected: Strategy::Ankle,
                ..
            }
        ));
    }
}
