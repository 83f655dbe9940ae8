//! Pack two 6-cycles into K_6,6 and print the certified result.

use cyclepack::generate::gen_complete;
use cyclepack::harness::solve;
use cyclepack::packer::PackConfig;
use cyclepack::profile::{CycleProfile, Mode};

fn main() {
    let g = gen_complete(6).unwrap();
    let prof = CycleProfile::parse("6,6", Mode::Theorem).unwrap();
    let res = solve(&g, &prof, &PackConfig::default());
    print!("{}", res.to_text());
    println!("exit code would be {}", res.exit_code());
}
