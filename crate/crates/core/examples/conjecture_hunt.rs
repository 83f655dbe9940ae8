//! Look for hosts that meet the conjectured degree bound yet cannot hold a
//! profile with 4-cycles.

use cyclepack::harness::cmd_conjecture_hunt;
use cyclepack::profile::{CycleProfile, Mode};

fn main() {
    let out = std::env::temp_dir().join("cyclepack-hunt");
    for (side, profile) in [(5, "4,6"), (4, "4,4"), (6, "4,4,4")] {
        let prof = CycleProfile::parse(profile, Mode::Conjecture).unwrap();
        let r = cmd_conjecture_hunt(side, &prof, 200, 1, &out, 18).unwrap();
        println!(
            "side {side}, profile {profile}: {} decided, {} packed, {} counterexample candidates",
            r.certified,
            r.packed,
            r.counterexamples.len()
        );
    }
}
