//! A seeded campaign at the degree threshold for two 6-cycles.

use cyclepack::harness::{cmd_trials, TrialConfig};
use cyclepack::profile::{CycleProfile, Mode};

fn main() {
    let prof = CycleProfile::parse("6,6", Mode::Theorem).unwrap();
    let mut cfg = TrialConfig::new(prof, 6, 200, 7);
    cfg.delta = Some(5);
    let summary = cmd_trials(&cfg).unwrap();
    print!("{}", summary.to_text());
}
