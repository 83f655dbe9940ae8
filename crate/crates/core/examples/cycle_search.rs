//! Exact cycle queries inside vertex subsets.

use cyclepack::cycles::{is_cycle, CycleFinder, Search};
use cyclepack::generate::gen_random_mindeg;

fn main() {
    let g = gen_random_mindeg(6, 6, 3, 7).unwrap();
    let mut finder = CycleFinder::new(&g);
    for len in [4, 6, 8, 10, 12] {
        match finder.cycle_of_length(g.vertices(), len) {
            Search::Found(c) => {
                assert!(is_cycle(&g, &c));
                println!("length {len}: {c:?}");
            }
            Search::None => println!("length {len}: none"),
            Search::OutOfBudget => println!("length {len}: budget exhausted"),
        }
    }
    let sets = finder.cycle_vertex_sets(g.vertices(), 4, 6).found().unwrap();
    println!("{} distinct vertex sets carry a 4- or 6-cycle", sets.len());

    let mut tight = CycleFinder::with_budget(&g, 50);
    println!("hamiltonian with 50 nodes: {:?}", tight.hamiltonian_cycle(g.vertices()).is_found());
}
