//! The exact oracle: a feasible and an infeasible instance.

use cyclepack::generate::{gen_complete, gen_sharpness};
use cyclepack::packer::{brute_force_pack, brute_force_pack_with_limit, OracleVerdict};
use cyclepack::profile::{CycleProfile, Mode};

fn main() {
    let g = gen_complete(9).unwrap();
    let prof = CycleProfile::parse("6,6,6", Mode::Theorem).unwrap();
    if let OracleVerdict::Packed(pk) = brute_force_pack(&g, &prof).unwrap() {
        println!("K_9,9 splits into {:?}", pk.cycles());
    }

    let (g, prof) = gen_sharpness(2).unwrap();
    println!("sharpness k=2, profile {prof}: {:?}", brute_force_pack(&g, &prof).unwrap());

    let big = gen_complete(10).unwrap();
    println!("20 vertices at the default limit: {:?}", brute_force_pack(&big, &prof).unwrap_err());
    println!(
        "with the limit raised: packed = {}",
        brute_force_pack_with_limit(&big, &prof, 20).unwrap().is_packed()
    );
}
