//! Drive the local moves by hand and watch the potential grow.

use cyclepack::generate::gen_random_mindeg_with;
use cyclepack::packer::{
    move_close_cycle, move_double_exchange, move_exchange_one, move_extend_path, move_shrink,
    select_anchor, SearchState,
};

fn main() {
    let g = gen_random_mindeg_with(8, 8, 4, 0.2, 3).unwrap();
    // an 8-cycle found by hand as the fixed cycle, target 6
    let mut finder = cyclepack::cycles::CycleFinder::new(&g);
    let c = finder.cycle_of_length(g.vertices(), 8).found().expect("host has an 8-cycle");
    let mut st = SearchState::new(&g, vec![c], &[6], 6, vec![]).unwrap();
    println!("start {:?}", st.potential());

    loop {
        let (name, next) = if let Some(n) = move_shrink(&st, &g) {
            ("shrink", n)
        } else if let Some(n) = move_extend_path(&st, &g) {
            ("extend_path", n)
        } else if let Some(n) = move_exchange_one(&st, &g) {
            ("exchange_one", n)
        } else {
            break;
        };
        assert!(next.potential() > st.potential());
        println!("{name:<13} -> {:?}", next.potential());
        st = next;
    }

    if let Some(cycle) = move_close_cycle(&st, &g) {
        println!("closed a {}-cycle in the remainder: {cycle:?}", cycle.len());
    } else if let Some(ctx) = select_anchor(&st, &g) {
        println!("stalled; exchanging around cycle {} with x* = {}", ctx.p_index, ctx.x_star);
        match move_double_exchange(&st, &g, &ctx) {
            Some(pk) => println!("exchange packed {:?}", pk.cycles()),
            None => println!("no exchange pattern applies"),
        }
    } else {
        println!("stalled without an anchor cycle");
    }
}
