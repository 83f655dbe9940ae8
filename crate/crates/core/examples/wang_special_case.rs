//! k disjoint cycles of length at least 2s on sides of size sk with minimum
//! degree (s - 1)k + 1; here s = 3, k = 2.

use cyclepack::harness::{cmd_trials, TrialConfig};
use cyclepack::profile::CycleProfile;

fn main() {
    let (s, k) = (3, 2);
    let prof = CycleProfile::wang(s, k).unwrap();
    let mut cfg = TrialConfig::new(prof, 9, 50, 11);
    cfg.delta = Some((s - 1) * k + 1);
    let summary = cmd_trials(&cfg).unwrap();
    print!("{}", summary.to_text());
    assert_eq!(summary.aggregate.oracle_fallbacks, 0);
}
