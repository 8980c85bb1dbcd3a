//! Generates one gait cycle from the bundled vector-field bank and reports
//! the phase segments, the largest boundary jumps and the range check.

use gaitforge::fixtures;
use gaitforge::gait_model::{
    generate_gait_cycle, limit_cycle, validate_ranges, GaitModelConfig, JointId, PhaseSchedule,
};

fn main() -> gaitforge::Result<()> {
    let bank = fixtures::model_bank();
    let config = GaitModelConfig {
        schedule: PhaseSchedule::guard(),
        ..GaitModelConfig::default()
    };
    let cycle = generate_gait_cycle(&bank, &config)?;
    let traj = &cycle.trajectory;
    println!("{} samples at tc = {}", traj.len(), config.tc);
    for (phase, start, end) in traj.segments() {
        println!("  {:<4} samples {start}..{end}", phase.as_str());
    }

    let mut jumps = cycle.boundaries.clone();
    jumps.sort_by(|a, b| b.jump.total_cmp(&a.jump));
    println!("largest boundary jumps:");
    for j in jumps.iter().take(3) {
        println!(
            "  {} {:?}->{:?} at x={:.4}: {:.2} deg",
            j.joint, j.from, j.to, j.x, j.jump
        );
    }

    let report = validate_ranges(traj, &fixtures::range_table());
    println!(
        "{} of {} samples outside the joint ranges",
        report.violations.len(),
        report.checked
    );

    let lc = limit_cycle(traj, JointId::LEFT_KNEE)?;
    println!(
        "left knee limit cycle: {} points, closure gap {:.3}",
        lc.points.len(),
        lc.closure_gap
    );
    Ok(())
}
