//! Rocking block released from a lean, with restitution 0.9.

use gaitforge::rocking_block::{energy, simulate, BlockParams, BlockState, Mode};

fn main() -> gaitforge::Result<()> {
    for restoring in [false, true] {
        let params = BlockParams::new(0.2, 0.9, 1e-3)?.with_restoring_sign(restoring);
        let init = BlockState::new(Mode::Left, -0.5, 0.0);
        let trace = simulate(init, &params, 10.0)?;
        println!(
            "restoring={restoring}: {} impacts, status {:?}, energy {:.6} -> {:.6}",
            trace.impacts.len(),
            trace.status,
            energy(&init, &params),
            energy(trace.last(), &params),
        );
        for e in trace.impacts.iter().take(4) {
            println!(
                "  t={:.4} {:?}: x2 {:.5} -> {:.5}",
                e.t, e.from, e.pre_velocity, e.post_velocity
            );
        }
    }
    Ok(())
}
