//! Runs the fuzzy push-recovery controller over a sweep of forces.

use gaitforge::push_fuzzy::{recover, recover_planar, Direction, ForceInput, PushTables};

fn main() -> gaitforge::Result<()> {
    let tables = PushTables::default();
    for direction in [Direction::Left, Direction::Forward] {
        for f in [1.0, 4.5, 6.5, 8.5, 10.5, 12.0, 13.0] {
            match recover(
                ForceInput {
                    magnitude: f,
                    direction,
                },
                &tables,
            ) {
                Ok(r) => println!("{direction:?} {f:>5} N -> {} ({:?})", r.strategy, r.state),
                Err(e) => println!("{direction:?} {f:>5} N -> {e}"),
            }
        }
    }
    let r = recover_planar(6.5, 10.5, &tables)?;
    println!("roll 6.5 N + pitch 10.5 N -> {}", r.strategy);
    Ok(())
}
