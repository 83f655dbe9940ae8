pub mod cycles;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod matching;
pub mod packer;
pub mod profile;
pub mod verifier;
