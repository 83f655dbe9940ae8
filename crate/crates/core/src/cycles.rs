//! Exact simple-cycle search inside induced vertex sets.
//!
//! Cycles are reported as vertex sequences `v_1 .. v_L` (the closing edge
//! `v_L v_1` is implicit) whose first vertex is the smallest id on the cycle.
//! Searches are depth-first from each possible smallest vertex with three
//! prunes: a side-balance bound (a bipartite cycle of length `L` has `L/2`
//! vertices per side), reachability of the still-needed vertex count, and a
//! memo of `(vertex, visited set)` states already shown to be dead.

use std::collections::HashSet;

use crate::graph::{BipartiteGraph, Vertex, VertexSet};

/// Outcome of a bounded exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted: no such object exists.
    None,
    /// The node budget ran out before a verdict.
    OutOfBudget,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

const MEMO_CAP: usize = 1 << 21;

/// Vertices reachable from `from` through `allowed` (including `from`).
pub fn reachable(g: &BipartiteGraph, from: Vertex, allowed: VertexSet) -> VertexSet {
    let mut seen = VertexSet::singleton(from);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            next = next.union(g.neighbors(v));
        }
        frontier = next.intersection(allowed).difference(seen);
        seen = seen.union(frontier);
    }
    seen
}

/// Depth-first cycle finder with an optional node budget shared by every
/// query made through it.
pub struct CycleFinder<'g> {
    g: &'g BipartiteGraph,
    budget: Option<u64>,
    spent: u64,
    memo: HashSet<(u8, u128)>,
}

impl<'g> CycleFinder<'g> {
    pub fn new(g: &'g BipartiteGraph) -> Self {
        CycleFinder {
            g,
            budget: None,
            spent: 0,
            memo: HashSet::new(),
        }
    }

    pub fn with_budget(g: &'g BipartiteGraph, nodes: u64) -> Self {
        CycleFinder {
            budget: Some(nodes),
            ..Self::new(g)
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn tick(&mut self) -> bool {
        self.spent += 1;
        self.budget.is_none_or(|b| self.spent <= b)
    }

    /// A cycle of exactly `len` vertices inside `within`.
    pub fn cycle_of_length(&mut self, within: VertexSet, len: usize) -> Search<Vec<Vertex>> {
        if len < 4 || len % 2 == 1 || len > within.len() {
            return Search::None;
        }
        let half = len / 2;
        if within.intersection(self.g.x_side()).len() < half
            || within.intersection(self.g.y_side()).len() < half
        {
            return Search::None;
        }
        for s in within {
            let allowed = within.difference(VertexSet::range(s + 1));
            if allowed.len() + 1 < len || self.g.deg_in(s, allowed) < 2 {
                continue;
            }
            self.memo.clear();
            let mut path = vec![s];
            match self.extend(s, allowed, len, &mut path, VertexSet::singleton(s)) {
                Some(true) => return Search::Found(path),
                Some(false) => {}
                None => return Search::OutOfBudget,
            }
        }
        Search::None
    }

    /// `Some(true)` when `path` was completed to a cycle, `Some(false)` when
    /// this state is dead, `None` when out of budget.
    fn extend(
        &mut self,
        s: Vertex,
        allowed: VertexSet,
        len: usize,
        path: &mut Vec<Vertex>,
        visited: VertexSet,
    ) -> Option<bool> {
        if !self.tick() {
            return None;
        }
        let cur = *path.last().unwrap();
        let depth = path.len();
        if depth == len {
            return Some(self.g.has_edge(cur, s));
        }
        let key = (cur as u8, visited.bits());
        if self.memo.contains(&key) {
            return Some(false);
        }
        let free = allowed.difference(visited);
        let closers = self.g.neighbors(s).intersection(free);
        let dead = closers.is_empty() || {
            let reach = reachable(self.g, cur, free);
            // need len - depth more vertices, the last of them next to s
            reach.len() - 1 < len - depth || reach.intersection(closers).is_empty()
        };
        if !dead {
            let half = len / 2;
            let xs = visited.intersection(self.g.x_side()).len();
            let ys = depth - xs;
            let side_full = |v: Vertex| {
                if v < self.g.x_size() {
                    xs >= half
                } else {
                    ys >= half
                }
            };
            let mut candidates = self.g.neighbors(cur).intersection(free);
            if depth + 1 == len {
                candidates = candidates.intersection(closers);
            }
            for w in candidates {
                if side_full(w) {
                    continue;
                }
                path.push(w);
                match self.extend(s, allowed, len, path, visited.with(w)) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                path.pop();
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
        Some(false)
    }

    /// Shortest cycle inside `within` whose length lies in `[min, max]`.
    pub fn shortest_cycle_in_range(
        &mut self,
        within: VertexSet,
        min: usize,
        max: usize,
    ) -> Search<Vec<Vertex>> {
        let max = max.min(within.len());
        let mut len = min.max(4);
        if len % 2 == 1 {
            len += 1;
        }
        while len <= max {
            match self.cycle_of_length(within, len) {
                Search::None => {}
                other => return other,
            }
            len += 2;
        }
        Search::None
    }

    /// Shortest cycle inside `within` with at least `min` vertices.
    pub fn shortest_cycle_at_least(&mut self, within: VertexSet, min: usize) -> Search<Vec<Vertex>> {
        self.shortest_cycle_in_range(within, min, within.len())
    }

    /// Hamiltonian cycle of `G[within]`.
    pub fn hamiltonian_cycle(&mut self, within: VertexSet) -> Search<Vec<Vertex>> {
        self.cycle_of_length(within, within.len())
    }

    /// Every distinct vertex set of a cycle inside `within` with length in
    /// `[min, max]`, in ascending order of size then bits.
    ///
    /// Walks each `(vertex, visited set)` state at most once per smallest
    /// vertex, so the cost is bounded by the number of such states rather
    /// than the (much larger) number of cycles.
    pub fn cycle_vertex_sets(
        &mut self,
        within: VertexSet,
        min: usize,
        max: usize,
    ) -> Search<Vec<VertexSet>> {
        let min = min.max(4);
        let max = max.min(within.len());
        let mut found: HashSet<u128> = HashSet::new();
        if min > max {
            return Search::Found(Vec::new());
        }
        for s in within {
            let allowed = within.difference(VertexSet::range(s + 1));
            if allowed.len() + 1 < min || self.g.deg_in(s, allowed) < 2 {
                continue;
            }
            let mut seen: HashSet<(u8, u128)> = HashSet::new();
            let mut stack = vec![(s, VertexSet::singleton(s))];
            while let Some((cur, visited)) = stack.pop() {
                if !self.tick() {
                    return Search::OutOfBudget;
                }
                let depth = visited.len();
                if depth >= min && self.g.has_edge(cur, s) {
                    found.insert(visited.bits());
                }
                if depth == max {
                    continue;
                }
                let free = allowed.difference(visited);
                let closers = self.g.neighbors(s).intersection(free);
                if closers.is_empty() {
                    continue;
                }
                let reach = reachable(self.g, cur, free);
                if reach.intersection(closers).is_empty() || depth + reach.len() - 1 < min {
                    continue;
                }
                let half = max / 2;
                let xs = visited.intersection(self.g.x_side()).len();
                let ys = depth - xs;
                for w in self.g.neighbors(cur).intersection(free) {
                    let full = if w < self.g.x_size() { xs >= half } else { ys >= half };
                    if full {
                        continue;
                    }
                    let next = visited.with(w);
                    if seen.insert((w as u8, next.bits())) {
                        stack.push((w, next));
                    }
                }
            }
        }
        let mut sets: Vec<VertexSet> = found.into_iter().map(VertexSet::from_bits).collect();
        sets.sort_by_key(|s| (s.len(), s.bits()));
        Search::Found(sets)
    }
}

/// Is `cycle` a simple cycle of `g` (closing edge included)?
pub fn is_cycle(g: &BipartiteGraph, cycle: &[Vertex]) -> bool {
    if cycle.len() < 4 {
        return false;
    }
    let set: VertexSet = cycle.iter().copied().collect();
    set.len() == cycle.len()
        && cycle.iter().all(|&v| v < g.order())
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_complete, gen_random_mindeg_with};

    /// Distinct cycle vertex sets by naive path enumeration (no pruning).
    fn naive_cycle_sets(g: &BipartiteGraph, within: VertexSet) -> HashSet<u128> {
        let mut out = HashSet::new();
        for s in within {
            let mut stack = vec![vec![s]];
            while let Some(p) = stack.pop() {
                let cur = *p.last().unwrap();
                if p.len() >= 4 && g.has_edge(cur, s) {
                    out.insert(p.iter().copied().collect::<VertexSet>().bits());
                }
                for w in g.neighbors(cur).intersection(within) {
                    if w > s && !p.contains(&w) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
        }
        out
    }

    fn c8_with_apex() -> BipartiteGraph {
        // X = 0..=3 plus apex 4, Y = 5..=8; cycle 0-5-1-6-2-7-3-8
        let cyc = [0, 5, 1, 6, 2, 7, 3, 8];
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (cyc[i], cyc[(i + 1) % 8])).collect();
        edges.extend([(4, 5), (4, 6), (4, 7)]);
        BipartiteGraph::from_edges(5, 4, edges).unwrap()
    }

    #[test]
    fn finds_cycles_in_complete_graphs() {
        let k33 = gen_complete(3).unwrap();
        let mut f = CycleFinder::new(&k33);
        let c = f.hamiltonian_cycle(k33.vertices()).found().unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cycle(&k33, &c));
        assert_eq!(c[0], 0);
        assert_eq!(f.cycle_of_length(k33.vertices(), 8), Search::None);
        assert_eq!(f.cycle_of_length(k33.vertices(), 5), Search::None);
    }

    #[test]
    fn shortest_with_apex() {
        let g = c8_with_apex();
        let mut f = CycleFinder::new(&g);
        let c = f.shortest_cycle_at_least(g.vertices(), 6).found().unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cycle(&g, &c));
        assert!(c.contains(&4));
        let four = f.shortest_cycle_at_least(g.vertices(), 4).found().unwrap();
        assert_eq!(four.len(), 4);
    }

    #[test]
    fn budget_is_reported() {
        let k = gen_complete(8).unwrap();
        let mut f = CycleFinder::with_budget(&k, 3);
        assert_eq!(f.cycle_of_length(k.vertices(), 16), Search::OutOfBudget);
    }

    #[test]
    fn cycle_sets_match_naive_enumeration() {
        for seed in 0..60u64 {
            let g = gen_random_mindeg_with(4, 4, 0, 0.3 + (seed % 5) as f64 * 0.12, seed).unwrap();
            let mut f = CycleFinder::new(&g);
            let sets = f.cycle_vertex_sets(g.vertices(), 4, 8).found().unwrap();
            let got: HashSet<u128> = sets.iter().map(|s| s.bits()).collect();
            assert_eq!(got, naive_cycle_sets(&g, g.vertices()), "seed {seed}");
            // every set really carries a Hamiltonian cycle of its own
            for s in &sets {
                let c = f.hamiltonian_cycle(*s).found().unwrap();
                assert!(is_cycle(&g, &c));
            }
            // range filter
            let six_up = f.cycle_vertex_sets(g.vertices(), 6, 8).found().unwrap();
            assert!(six_up.iter().all(|s| s.len() >= 6));
            assert_eq!(six_up.len(), got.iter().filter(|b| b.count_ones() >= 6).count());
        }
    }

    #[test]
    fn exact_length_search_agrees_with_naive_sets() {
        for seed in 0..60u64 {
            let g = gen_random_mindeg_with(5, 5, 0, 0.35, seed + 1000).unwrap();
            let naive = naive_cycle_sets(&g, g.vertices());
            let mut f = CycleFinder::new(&g);
            for len in [4, 6, 8, 10] {
                let expect = naive.iter().any(|b| b.count_ones() as usize == len);
                let got = f.cycle_of_length(g.vertices(), len);
                assert_eq!(got.is_found(), expect, "seed {seed} len {len}");
                if let Search::Found(c) = got {
                    assert!(is_cycle(&g, &c));
                    assert_eq!(c.len(), len);
                }
            }
        }
    }

    #[test]
    fn reachable_respects_allowed() {
        let k33 = gen_complete(3).unwrap();
        let r = reachable(&k33, 0, VertexSet::from_iter([3, 1]));
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![0, 1, 3]);
    }
}
