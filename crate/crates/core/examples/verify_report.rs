//! The verifier on a valid packing and on three broken ones.

use cyclepack::generate::gen_complete;
use cyclepack::packer::Packing;
use cyclepack::profile::{CycleProfile, Mode};
use cyclepack::verifier::{check_hypotheses, verify_packing};

fn main() {
    let g = gen_complete(6).unwrap();
    let prof = CycleProfile::parse("6,6", Mode::Theorem).unwrap();
    let good = Packing::new(vec![vec![0, 6, 1, 7, 2, 8], vec![3, 9, 4, 10, 5, 11]]);
    println!("{}", verify_packing(&g, &prof, &good).to_json());

    let broken = [
        ("shared vertex", vec![vec![0, 6, 1, 7, 2, 8], vec![0, 9, 4, 10, 5, 11]]),
        ("too short", vec![vec![0, 6, 1, 7], vec![3, 9, 4, 10, 5, 11]]),
        ("not an edge", vec![vec![0, 1, 6, 7, 2, 8], vec![3, 9, 4, 10, 5, 11]]),
    ];
    for (what, cycles) in broken {
        let r = verify_packing(&g, &prof, &Packing::new(cycles));
        let f = r.first_failure().unwrap();
        println!("{what}: ok = {}, first failure {} ({})", r.ok, f.name, f.detail);
    }

    let h = check_hypotheses(&g, &prof);
    println!("hypotheses hold: {}", h.hypotheses_hold());
}
