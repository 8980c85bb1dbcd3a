//! Steps the gait-state cellular automaton from every starting code.

use gaitforge::gait_ca::{decode, CAState, CaRules};

fn main() -> gaitforge::Result<()> {
    let rules = CaRules::default();
    for s in CAState::all() {
        let seq = rules.predict_sequence(s, 4)?;
        let codes: Vec<String> = seq.iter().map(|c| c.to_string()).collect();
        let (side, sub) = decode(s);
        println!("{:?} {:<4} {}", side, sub.as_str(), codes.join(" "));
    }
    Ok(())
}
