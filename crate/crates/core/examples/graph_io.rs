//! Build a bipartite graph, write it in the text format and read it back.

use cyclepack::graph::{BipartiteGraph, VertexSet};
use cyclepack::io::{parse_graph, serialize_graph};

fn main() {
    // X = {0, 1, 2}, Y = {3, 4, 5}: a 6-cycle plus the chord 0-4
    let g = BipartiteGraph::from_edges(3, 3, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)])
        .expect("valid edges");
    let text = serialize_graph(&g);
    print!("{text}");

    let back = parse_graph(text.as_bytes()).expect("round trip");
    assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    println!("min degree {}, {} edges", back.min_degree().unwrap(), back.edge_count());

    let view = back.induced(VertexSet::from_iter([0, 1, 4])).unwrap();
    println!("G[{{0,1,4}}] has {} edges", view.edge_count());

    match parse_graph(b"p bip 2 2 1\ne 0 1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
