//! Maximum matchings and longest alternating paths.

use cyclepack::generate::gen_random_mindeg_with;
use cyclepack::graph::InducedView;
use cyclepack::matching::{is_maximal_alternating, is_perfect, longest_alternating_path, max_matching};

fn main() {
    let g = gen_random_mindeg_with(5, 6, 1, 0.3, 42).unwrap();
    let view = InducedView::whole(&g);
    let m = max_matching(&view);
    println!("matching of size {}: {:?}", m.size(), m.edges());
    println!("perfect: {}", is_perfect(&view, &m));

    for v in g.vertices().iter().filter(|&v| !m.is_matched(v)) {
        let p = longest_alternating_path(&view, &m, v, false).unwrap();
        assert!(is_maximal_alternating(&view, &m, &p, false));
        println!("from unmatched {v}: {p:?}");
    }
}
