use std::collections::BTreeMap;

use super::{
    fuzzify_force, Axis, DirectionDegrees, FallState, ForceDegrees, ForceInput, ForceLevel,
    PushResponse, PushTables, ReactionMembership, Strategy,
};
use crate::error::{Error, Result};

/// First stage: force and direction degrees to roll/pitch reaction degrees.
pub fn fis1_infer(
    force: &ForceDegrees,
    direction: &DirectionDegrees,
    tables: &PushTables,
) -> ReactionMembership {
    let mut out = ReactionMembership::default();
    for rule in &tables.fis1 {
        let fire = force.get(rule.force).min(direction.axis_degree(rule.axis));
        let cur = out.get(rule.reaction_axis, rule.reaction_level);
        out.set(rule.reaction_axis, rule.reaction_level, cur.max(fire));
    }
    out
}

/// Second stage: reaction grid to a recovery strategy.
///
/// An axis with all-zero degrees is read as Small on that axis, at the
/// strongest degree present on the other axis. Ties between strategies
/// resolve to the less severe one.
pub fn fis2_infer(reaction: &ReactionMembership, tables: &PushTables) -> Result<PushResponse> {
    if reaction.is_zero() {
        return Err(Error::NoDecision);
    }
    let mut eff = *reaction;
    for (axis, other) in [(Axis::Roll, Axis::Pitch), (Axis::Pitch, Axis::Roll)] {
        let quiet = ForceLevel::ALL
            .iter()
            .all(|&l| reaction.get(axis, l) == 0.0);
        if quiet {
            let peak = ForceLevel::ALL
                .iter()
                .map(|&l| reaction.get(other, l))
                .fold(0.0, f64::max);
            eff.set(axis, ForceLevel::Small, peak);
        }
    }

    let mut degrees: BTreeMap<Strategy, f64> = Strategy::ALL.iter().map(|&s| (s, 0.0)).collect();
    for roll in ForceLevel::ALL {
        for pitch in ForceLevel::ALL {
            let fire = eff.get(Axis::Roll, roll).min(eff.get(Axis::Pitch, pitch));
            let s = tables.fis2[roll.index()][pitch.index()];
            let d = degrees.get_mut(&s).expect("all strategies present");
            *d = d.max(fire);
        }
    }
    // BTreeMap iterates in severity order, so the first maximum is the safest
    let (strategy, _) =
        degrees
            .iter()
            .fold((Strategy::Ankle, f64::NEG_INFINITY), |best, (&s, &d)| {
                if d > best.1 {
                    (s, d)
                } else {
                    best
                }
            });
    let state = if strategy.is_fall() {
        FallState::Fall
    } else {
        FallState::NotFall
    };
    Ok(PushResponse {
        reaction: *reaction,
        strategy,
        state,
        strategy_degrees: degrees,
    })
}

/// Push of magnitude `force` with a possibly fuzzy direction.
pub fn recover_with(
    force: f64,
    direction: &DirectionDegrees,
    tables: &PushTables,
) -> Result<PushResponse> {
    let f = fuzzify_force(force, tables)?;
    fis2_infer(&fis1_infer(&f, direction, tables), tables)
}

pub fn recover(input: ForceInput, tables: &PushTables) -> Result<PushResponse> {
    recover_with(
        input.magnitude,
        &DirectionDegrees::crisp(input.direction),
        tables,
    )
}

/// Push with separate lateral (roll) and sagittal (pitch) force
/// components, each fuzzified on its own axis.
pub fn recover_planar(
    roll_force: f64,
    pitch_force: f64,
    tables: &PushTables,
) -> Result<PushResponse> {
    let r = fis1_infer(
        &fuzzify_force(roll_force, tables)?,
        &DirectionDegrees::crisp(super::Direction::Left),
        tables,
    );
    let p = fis1_infer(
        &fuzzify_force(pitch_force, tables)?,
        &DirectionDegrees::crisp(super::Direction::Forward),
        tables,
    );
    let mut reaction = ReactionMembership::default();
    for l in ForceLevel::ALL {
        reaction.set(Axis::Roll, l, r.get(Axis::Roll, l));
        reaction.set(Axis::Pitch, l, p.get(Axis::Pitch, l));
    }
    fis2_infer(&reaction, tables)
}

#[cfg(test)]
mod tests {
    use super::super::Direction;
    use super::*;

    #[test]
    fn small_backward_push_is_ankle() {
        let t = PushTables::default();
        let r = recover(
            ForceInput {
                magnitude: 2.0,
                direction: Direction::Backward,
            },
            &t,
        )
        .unwrap();
        assert_eq!(r.strategy, Strategy::Ankle);
        assert_eq!(r.state, FallState::NotFall);
        assert_eq!(r.reaction.get(Axis::Pitch, ForceLevel::Small), 1.0);
        assert_eq!(r.reaction.get(Axis::Roll, ForceLevel::Small), 0.0);
    }

    #[test]
    fn single_direction_examples() {
        let t = PushTables::default();
        let go = |f: f64, d: Direction| {
            recover(
                ForceInput {
                    magnitude: f,
                    direction: d,
                },
                &t,
            )
            .unwrap()
            .strategy
        };
        assert_eq!(go(6.5, Direction::Left), Strategy::Knee);
        assert_eq!(go(6.5, Direction::Forward), Strategy::Knee);
        assert_eq!(go(10.5, Direction::Right), Strategy::Hip);
        assert_eq!(go(10.5, Direction::Backward), Strategy::Hip);
        assert_eq!(go(4.5, Direction::Left), Strategy::Ankle);
    }

    #[test]
    fn planar_examples() {
        let t = PushTables::default();
        let go = |r: f64, p: f64| recover_planar(r, p, &t).unwrap();
        assert_eq!(go(2.0, 6.5).strategy, Strategy::Knee);
        assert_eq!(go(6.5, 6.5).strategy, Strategy::Hip);
        assert_eq!(go(6.5, 10.5).strategy, Strategy::FallFrontal);
        assert_eq!(go(10.5, 6.5).strategy, Strategy::FallSideways);
        let fall = go(10.5, 10.5);
        assert_eq!(fall.strategy, Strategy::Fall);
        assert_eq!(fall.state, FallState::Fall);
    }

    #[test]
    fn zero_reaction_has_no_decision() {
        let t = PushTables::default();
        assert!(matches!(
            fis2_infer(&ReactionMembership::default(), &t),
            Err(Error::NoDecision)
        ));
    }

    #[test]
    fn beyond_limit_is_impossible() {
        let t = PushTables::default();
        let r = recover(
            ForceInput {
                magnitude: 12.5,
                direction: Direction::Left,
            },
            &t,
        );
        assert!(matches!(r, Err(Error::RecoveryImpossible(_))));
    }

    #[test]
    fn severity_is_monotone_in_force() {
        let t = PushTables::default();
        for d in Direction::ALL {
            let mut prev = 0;
            for i in 0..=120 {
                let s = recover(
                    ForceInput {
                        magnitude: i as f64 * 0.1,
                        direction: d,
                    },
                    &t,
                )
                .unwrap()
                .strategy
                .severity();
                assert!(s >= prev, "{d:?} at {}", i as f64 * 0.1);
                prev = s;
            }
        }
    }
}
