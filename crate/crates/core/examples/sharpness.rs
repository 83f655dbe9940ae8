//! One below the conjectured threshold the packing can fail.

use cyclepack::harness::cmd_sharpness;

fn main() {
    for k in [2, 4] {
        let r = cmd_sharpness(k, 18).unwrap();
        println!(
            "k = {k}: {} vertices, min degree {} vs threshold {}, profile {} -> {}",
            r.order, r.min_degree, r.threshold, r.profile, r.verdict
        );
    }
}
