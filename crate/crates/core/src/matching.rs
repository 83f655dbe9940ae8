//! Maximum matchings and alternating paths on induced views.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{InducedView, Side, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("vertex {0} is not in the view")]
    NotInView(Vertex),
    #[error("vertex {0} is unmatched but the path must start with a matching edge")]
    StartUnmatched(Vertex),
}

/// Symmetric partial pairing of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<Option<Vertex>>,
}

impl Matching {
    pub fn empty(order: usize) -> Self {
        Matching {
            partner: vec![None; order],
        }
    }

    #[inline]
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.partner.get(v).copied().flatten()
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.partner(v).is_some()
    }

    pub fn pair(&mut self, a: Vertex, b: Vertex) {
        if let Some(old) = self.partner[a].take() {
            self.partner[old] = None;
        }
        if let Some(old) = self.partner[b].take() {
            self.partner[old] = None;
        }
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
    }

    pub fn unpair(&mut self, a: Vertex) {
        if let Some(b) = self.partner[a].take() {
            self.partner[b] = None;
        }
    }

    pub fn size(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    /// Matched pairs `(lower id, higher id)` in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(a, p)| p.filter(|&b| a < b).map(|b| (a, b)))
            .collect()
    }

    /// Symmetric, and every pair is an edge of `view`.
    pub fn is_valid_for(&self, view: &InducedView<'_>) -> bool {
        self.partner.iter().enumerate().all(|(a, p)| match *p {
            None => true,
            Some(b) => {
                self.partner(b) == Some(a)
                    && view.contains(a)
                    && view.contains(b)
                    && view.neighbors(a).contains(b)
            }
        })
    }
}

/// Hopcroft–Karp. Vertices and neighbors are scanned in ascending id order,
/// so the result is deterministic.
pub fn max_matching(view: &InducedView<'_>) -> Matching {
    let g = view.graph();
    let mut m = Matching::empty(g.order());
    let left: Vec<Vertex> = view.vertices().intersection(g.x_side()).iter().collect();
    const INF: usize = usize::MAX;
    let mut dist = vec![INF; g.order()];

    loop {
        // layer free left vertices
        let mut queue = VecDeque::new();
        for &a in &left {
            if m.is_matched(a) {
                dist[a] = INF;
            } else {
                dist[a] = 0;
                queue.push_back(a);
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for b in view.neighbors(a) {
                match m.partner(b) {
                    None => found = true,
                    Some(a2) if dist[a2] == INF => {
                        dist[a2] = dist[a] + 1;
                        queue.push_back(a2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for &a in &left {
            if !m.is_matched(a) {
                augment(view, &mut m, &mut dist, a);
            }
        }
    }
    debug_assert!(m.is_valid_for(view));
    m
}

fn augment(view: &InducedView<'_>, m: &mut Matching, dist: &mut [usize], a: Vertex) -> bool {
    for b in view.neighbors(a) {
        let ok = match m.partner(b) {
            None => true,
            Some(a2) => dist[a2] == dist[a].wrapping_add(1) && augment(view, m, dist, a2),
        };
        if ok {
            m.pair(a, b);
            return true;
        }
    }
    dist[a] = usize::MAX;
    false
}

const ALTERNATING_EXPANSION_BUDGET: usize = 4096;

/// A non-extendable `m`-alternating path from `start`.
///
/// Edges alternate between non-matching and matching, beginning with a
/// matching edge when `first_edge_in_m` is set. The search is a depth-first
/// walk in ascending id order that keeps the longest path seen and stops
/// after a fixed number of expansions; every candidate it records ends at a
/// vertex with no legal continuation, so the result is always maximal.
pub fn longest_alternating_path(
    view: &InducedView<'_>,
    m: &Matching,
    start: Vertex,
    first_edge_in_m: bool,
) -> Result<Vec<Vertex>, MatchingError> {
    if !view.contains(start) {
        return Err(MatchingError::NotInView(start));
    }
    if first_edge_in_m && !m.partner(start).is_some_and(|p| view.contains(p)) {
        return Err(MatchingError::StartUnmatched(start));
    }
    let mut search = AltSearch {
        view,
        m,
        path: vec![start],
        best: Vec::new(),
        budget: ALTERNATING_EXPANSION_BUDGET,
    };
    search.dfs(VertexSet::singleton(start), first_edge_in_m);
    Ok(search.best)
}

struct AltSearch<'a, 'g> {
    view: &'a InducedView<'g>,
    m: &'a Matching,
    path: Vec<Vertex>,
    best: Vec<Vertex>,
    budget: usize,
}

impl AltSearch<'_, '_> {
    fn next_steps(&self, cur: Vertex, visited: VertexSet, matching_edge: bool) -> VertexSet {
        let partner = self.m.partner(cur);
        if matching_edge {
            match partner {
                Some(p) if self.view.contains(p) && !visited.contains(p) => VertexSet::singleton(p),
                _ => VertexSet::EMPTY,
            }
        } else {
            let mut n = self.view.neighbors(cur).difference(visited);
            if let Some(p) = partner {
                n.remove(p);
            }
            n
        }
    }

    fn dfs(&mut self, visited: VertexSet, matching_edge: bool) {
        let cur = *self.path.last().unwrap();
        let steps = self.next_steps(cur, visited, matching_edge);
        if steps.is_empty() {
            if self.path.len() > self.best.len() {
                self.best = self.path.clone();
            }
            return;
        }
        for w in steps {
            if self.budget == 0 && !self.best.is_empty() {
                return;
            }
            self.budget = self.budget.saturating_sub(1);
            self.path.push(w);
            self.dfs(visited.with(w), !matching_edge);
            self.path.pop();
        }
    }
}

/// Checks that `path` alternates as described and cannot be extended.
pub fn is_maximal_alternating(
    view: &InducedView<'_>,
    m: &Matching,
    path: &[Vertex],
    first_edge_in_m: bool,
) -> bool {
    if path.is_empty() || !path.iter().all(|&v| view.contains(v)) {
        return false;
    }
    let mut in_m = first_edge_in_m;
    let mut visited = VertexSet::singleton(path[0]);
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !view.neighbors(a).contains(b) || visited.contains(b) {
            return false;
        }
        if (m.partner(a) == Some(b)) != in_m {
            return false;
        }
        visited.insert(b);
        in_m = !in_m;
    }
    let search = AltSearch {
        view,
        m,
        path: Vec::new(),
        best: Vec::new(),
        budget: 0,
    };
    search
        .next_steps(*path.last().unwrap(), visited, in_m)
        .is_empty()
}

/// `true` when every vertex of the view's smaller-or-equal side is matched
/// and both sides have equal size.
pub fn is_perfect(view: &InducedView<'_>, m: &Matching) -> bool {
    let g = view.graph();
    let xs = view.vertices().intersection(g.side_set(Side::X)).len();
    let ys = view.vertices().intersection(g.side_set(Side::Y)).len();
    xs == ys && m.size() == xs
}
