#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclepack::graph::BipartiteGraph;

/// Re-checks a packing against a raw edge list: every cycle closed, simple,
/// long enough, even, and no vertex shared.
pub fn naive_accepts(edges: &[(usize, usize)], order: usize, lengths: &[usize], cycles: &[Vec<usize>]) -> bool {
    let edge_set: HashSet<(usize, usize)> = edges
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    if cycles.len() != lengths.len() {
        return false;
    }
    let mut used = HashSet::new();
    for (c, &want) in cycles.iter().zip(lengths) {
        if c.len() < want || c.len() < 4 || c.len() % 2 != 0 {
            return false;
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if a >= order || !edge_set.contains(&(a, b)) {
                return false;
            }
            if !used.insert(a) {
                return false;
            }
        }
    }
    true
}

/// `ham[mask]`: the vertices of `mask` carry a Hamiltonian cycle of
/// `G[mask]` (at least 4 vertices). Subset dynamic programming over paths
/// that start at the lowest vertex of the mask.
pub fn hamiltonian_masks(g: &BipartiteGraph) -> Vec<bool> {
    let n = g.order();
    assert!(n <= 14, "subset DP is for tiny hosts");
    let adj: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&w| g.has_edge(v, w)).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let full = 1usize << n;
    // reach[mask] = bitset of end vertices of paths from lowest(mask) covering mask
    let mut reach = vec![0u32; full];
    for s in 0..n {
        reach[1 << s] = 1 << s;
    }
    let mut ham = vec![false; full];
    for mask in 1..full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        if (mask as u32).count_ones() >= 4 && ends & adj[low] != 0 {
            ham[mask] = true;
        }
        for (v, &nbrs) in adj.iter().enumerate() {
            if ends >> v & 1 == 0 {
                continue;
            }
            let mut nxt = nbrs & !(mask as u32);
            // only vertices above the start keep the start the lowest
            nxt &= !((1u32 << (low + 1)) - 1);
            while nxt != 0 {
                let w = nxt.trailing_zeros() as usize;
                nxt &= nxt - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    ham
}

/// Independent feasibility verdict: is there a partition of some of the
/// vertices into parts, part `i` carrying a cycle through all its vertices
/// with at least `lengths[i]` of them?
pub fn partition_oracle(g: &BipartiteGraph, lengths: &[usize]) -> bool {
    let ham = hamiltonian_masks(g);
    let full = 1usize << g.order();
    fn place(ham: &[bool], lengths: &[usize], free: usize) -> bool {
        let Some((&c, rest)) = lengths.split_first() else {
            return true;
        };
        // every non-empty submask of the free vertices
        let mut sub = free;
        while sub != 0 {
            if ham[sub] && sub.count_ones() as usize >= c && place(ham, rest, free & !sub) {
                return true;
            }
            sub = (sub - 1) & free;
        }
        false
    }
    place(&ham, lengths, full - 1)
}

/// Random bipartite host on `x + y` vertices with edge probability `p`.
pub fn random_host(x: usize, y: usize, p: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..x {
        for b in x..x + y {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    BipartiteGraph::from_edges(x, y, edges).unwrap()
}
