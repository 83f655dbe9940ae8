//! Every bipartite graph on 4 + 4 vertices with minimum degree 3 has a
//! cycle of length at least 6.

use cyclepack::harness::cmd_exhaustive;
use cyclepack::profile::{CycleProfile, Mode};

fn main() {
    for profile in ["6", "8", "4,4"] {
        let mode = if profile.contains('4') { Mode::Conjecture } else { Mode::Theorem };
        let prof = CycleProfile::parse(profile, mode).unwrap();
        let s = cmd_exhaustive(4, &prof, false).unwrap();
        println!(
            "profile {profile:<4} threshold {}: {} graphs, {} pruned early, {} meet the hypotheses, {} packed",
            s.threshold, s.graphs_enumerated, s.pruned, s.hypothesis_satisfying, s.packed
        );
        assert!(s.ok());
    }
}
