//! Local moves on a [`SearchState`].
//!
//! `move_shrink`, `move_extend_path` and `move_exchange_one` return a new
//! state whose potential is strictly larger. `move_close_cycle` and
//! `move_double_exchange` are terminal: they hand back the missing cycle or
//! a whole packing.

use std::collections::HashMap;

use crate::cycles::CycleFinder;
use crate::graph::{BipartiteGraph, Side, Vertex, VertexSet};
use crate::matching::{is_perfect, longest_alternating_path, max_matching};

use super::state::{is_path_in, SearchState};
use super::Packing;

/// Node budget for one exact cycle query issued by a move.
pub const SEARCH_BUDGET: u64 = 200_000;

/// Pósa rotations explored per extension attempt.
const MAX_ROTATIONS: usize = 64;

fn finder(g: &BipartiteGraph) -> CycleFinder<'_> {
    CycleFinder::with_budget(g, SEARCH_BUDGET)
}

/// Shortest cycle in `within` with length in `[min, max]`; budget overruns
/// count as "not found".
fn shortest_cycle(g: &BipartiteGraph, within: VertexSet, min: usize, max: usize) -> Option<Vec<Vertex>> {
    finder(g).shortest_cycle_in_range(within, min, max).found()
}

fn best_by_potential(candidates: Vec<SearchState>) -> Option<SearchState> {
    // max_by_key keeps the last maximum; iterate reversed to keep the first
    candidates.into_iter().rev().max_by_key(|s| s.potential())
}

/// Replaces a fixed cycle longer than its target by a shorter one of length
/// at least the target, found inside the cycle's own vertex set (chords) or
/// inside the cycle plus one remainder vertex `u` with at least two
/// neighbors on it. A remainder vertex adjacent to half of a cycle always
/// qualifies.
pub fn move_shrink(st: &SearchState, g: &BipartiteGraph) -> Option<SearchState> {
    for (i, c) in st.fixed().iter().enumerate() {
        if c.len() <= c.target() {
            continue;
        }
        let mut candidates = Vec::new();
        let mut try_set = |within: VertexSet| {
            if let Some(cyc) = shortest_cycle(g, within, c.target(), c.len() - 1) {
                let mut next = st.clone();
                next.replace_cycle(g, i, cyc);
                candidates.push(next);
            }
        };
        try_set(c.set());
        for u in st.remainder() {
            if g.deg_in(u, c.set()) >= 2 {
                try_set(c.set().with(u));
            }
        }
        if let Some(best) = best_by_potential(candidates) {
            return Some(best);
        }
    }
    None
}

/// Paths derived from `path` by Pósa rotations with the first vertex fixed,
/// including `path` itself.
fn rotations(g: &BipartiteGraph, path: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = vec![path.to_vec()];
    let mut seen_ends = VertexSet::singleton(*path.last().unwrap());
    let mut i = 0;
    while i < out.len() && out.len() < MAX_ROTATIONS {
        let p = out[i].clone();
        let s = p.len();
        let end = p[s - 1];
        for j in 0..s.saturating_sub(2) {
            if g.has_edge(end, p[j]) && !seen_ends.contains(p[j + 1]) {
                let mut q = p[..=j].to_vec();
                q.extend(p[j + 1..].iter().rev());
                seen_ends.insert(p[j + 1]);
                out.push(q);
                if out.len() >= MAX_ROTATIONS {
                    break;
                }
            }
        }
        i += 1;
    }
    out
}

/// The alternating-path structure of the remainder minus the path: paths
/// `Q` inside `G₂ - V(P)` built from a maximum matching, one per start
/// vertex. When the matching is not perfect each `Q` is two alternating
/// paths glued at an unmatched vertex; otherwise it is one alternating path
/// opening with a matching edge.
pub fn alternating_segments(st: &SearchState, g: &BipartiteGraph) -> Vec<Vec<Vertex>> {
    let off = st.off_path();
    let Ok(view) = g.induced(off) else {
        return Vec::new();
    };
    if off.is_empty() {
        return Vec::new();
    }
    let m = max_matching(&view);
    if is_perfect(&view, &m) {
        return off
            .iter()
            .filter_map(|v| longest_alternating_path(&view, &m, v, true).ok())
            .collect();
    }
    let mut out = Vec::new();
    for y0 in off.iter().filter(|&v| !m.is_matched(v)) {
        let Ok(p1) = longest_alternating_path(&view, &m, y0, false) else {
            continue;
        };
        let mut m2 = m.clone();
        for w in p1.windows(2) {
            if m2.partner(w[0]) == Some(w[1]) {
                m2.unpair(w[0]);
            }
        }
        let rest = off.difference(p1.iter().copied().collect()).with(y0);
        let Ok(view2) = g.induced(rest) else {
            continue;
        };
        let Ok(p2) = longest_alternating_path(&view2, &m2, y0, false) else {
            continue;
        };
        let mut q: Vec<Vertex> = p1.into_iter().rev().collect();
        q.extend(&p2[1..]);
        out.push(q);
    }
    out
}

/// Longest path obtained by splicing `q` into `path` between two attachment
/// points (dropping the segment between them), or hanging it off a prefix or
/// suffix.
fn splice_paths(g: &BipartiteGraph, path: &[Vertex], q: &[Vertex]) -> Option<Vec<Vertex>> {
    let s = path.len();
    let mut best: Option<Vec<Vertex>> = None;
    let mut consider = |cand: Vec<Vertex>| {
        if cand.len() > best.as_ref().map_or(s, Vec::len) {
            best = Some(cand);
        }
    };
    let rev: Vec<Vertex> = q.iter().rev().copied().collect();
    for q in [q, &rev[..]] {
        let (head, tail) = (q[0], q[q.len() - 1]);
        for i in 0..s {
            if !g.has_edge(path[i], head) {
                continue;
            }
            // prefix + q
            let mut cand = path[..=i].to_vec();
            cand.extend(q);
            consider(cand);
            for j in i + 1..s {
                if g.has_edge(path[j], tail) {
                    let mut cand = path[..=i].to_vec();
                    cand.extend(q);
                    cand.extend(&path[j..]);
                    consider(cand);
                }
            }
        }
        // q + suffix
        for j in 0..s {
            if g.has_edge(path[j], tail) {
                let mut cand = q.to_vec();
                cand.extend(&path[j..]);
                consider(cand);
            }
        }
    }
    best
}

/// Strictly lengthens the path: endpoint extension, extension after Pósa
/// rotations or after closing the path into a cycle, then splicing in the
/// matching-derived segments of [`alternating_segments`].
pub fn move_extend_path(st: &SearchState, g: &BipartiteGraph) -> Option<SearchState> {
    let off = st.off_path();
    let with_path = |p: Vec<Vertex>| {
        debug_assert!(is_path_in(g, &p, st.remainder()));
        let mut next = st.clone();
        next.set_path(p);
        next
    };
    let path = st.path();
    if path.is_empty() {
        return st.remainder().first().map(|v| with_path(vec![v]));
    }
    if off.is_empty() {
        return None;
    }

    let reversed: Vec<Vertex> = path.iter().rev().copied().collect();
    for base in [path, &reversed[..]] {
        for p in rotations(g, base) {
            let end = p[p.len() - 1];
            if let Some(w) = g.neighbors(end).intersection(off).first() {
                let mut q = p;
                q.push(w);
                return Some(with_path(q));
            }
            // a closed path can be reopened at any vertex with an outside neighbor
            if p.len() >= 4 && g.has_edge(p[0], end) {
                for (j, &v) in p.iter().enumerate() {
                    if let Some(w) = g.neighbors(v).intersection(off).first() {
                        let mut q = vec![w];
                        q.extend(&p[j..]);
                        q.extend(&p[..j]);
                        return Some(with_path(q));
                    }
                }
            }
        }
    }

    alternating_segments(st, g)
        .iter()
        .filter_map(|q| splice_paths(g, path, q))
        .rev()
        .max_by_key(Vec::len)
        .map(with_path)
}

/// Swaps an off-path remainder vertex `u''` into a fixed cycle in place of a
/// cycle neighbor `v` of a path end `u'`; `v` then extends the path at `u'`.
/// The new cycle keeps length between its target and its old length.
pub fn move_exchange_one(st: &SearchState, g: &BipartiteGraph) -> Option<SearchState> {
    let path = st.path();
    if path.is_empty() {
        return None;
    }
    let off = st.off_path();
    let first = path[0];
    let last = path[path.len() - 1];
    let ends: &[(Vertex, bool)] = if first == last {
        &[(last, false)]
    } else {
        &[(last, false), (first, true)]
    };

    for (i, c) in st.fixed().iter().enumerate() {
        let mut candidates = Vec::new();
        for &(end, at_front) in ends {
            let anchors = g.neighbors(end).intersection(c.set());
            if anchors.is_empty() {
                continue;
            }
            for u2 in off {
                if g.deg_in(u2, c.set()) < 2 {
                    continue;
                }
                for v in anchors {
                    let within = c.set().without(v).with(u2);
                    let Some(cyc) = shortest_cycle(g, within, c.target(), c.len()) else {
                        continue;
                    };
                    let mut next = st.clone();
                    next.replace_cycle(g, i, cyc);
                    let mut p = path.to_vec();
                    if at_front {
                        p.insert(0, v);
                    } else {
                        p.push(v);
                    }
                    // replace_cycle may have cut the path if u2 sat on it; it did not
                    next.set_path(p);
                    candidates.push(next);
                }
            }
        }
        if let Some(best) = best_by_potential(candidates) {
            return Some(best);
        }
    }
    None
}

/// A cycle of length at least the last target inside the remainder, from
/// chords at the path ends, crossing end chords, the path/segment splice, or
/// an exact bounded search. The shortest one found is returned.
pub fn move_close_cycle(st: &SearchState, g: &BipartiteGraph) -> Option<Vec<Vertex>> {
    let need = st.last_target();
    let rem = st.remainder();
    if rem.len() < need {
        return None;
    }
    let path = st.path();
    let s = path.len();
    let mut best: Option<Vec<Vertex>> = None;
    let consider = |best: &mut Option<Vec<Vertex>>, c: Vec<Vertex>| {
        if c.len() >= need && best.as_ref().is_none_or(|b| c.len() < b.len()) {
            *best = Some(c);
        }
    };

    if s >= need {
        let (u1, us) = (path[0], path[s - 1]);
        for j in need - 1..s {
            if g.has_edge(u1, path[j]) {
                consider(&mut best, path[..=j].to_vec());
            }
            let i = s - 1 - j;
            if g.has_edge(us, path[i]) {
                consider(&mut best, path[i..].to_vec());
            }
        }
        // u1 .. u_i, u_s .. u_j with u_i ~ u_s and u_j ~ u_1
        for i in 0..s {
            if !g.has_edge(path[i], us) {
                continue;
            }
            for j in i + 1..s {
                if g.has_edge(path[j], u1) && (i + 1) + (s - j) >= need {
                    let mut c = path[..=i].to_vec();
                    c.extend(path[j..].iter().rev());
                    consider(&mut best, c);
                }
            }
        }
    }

    if s > 0 {
        for q in alternating_segments(st, g) {
            let rev: Vec<Vertex> = q.iter().rev().copied().collect();
            for q in [&q[..], &rev[..]] {
                for i in 0..s {
                    if !g.has_edge(path[i], q[0]) {
                        continue;
                    }
                    for j in i + 1..s {
                        if g.has_edge(path[j], q[q.len() - 1]) {
                            let mut c = path[i..=j].to_vec();
                            c.extend(q.iter().rev());
                            if q.len() >= 2 || j > i + 1 {
                                consider(&mut best, c);
                            }
                        }
                    }
                }
            }
        }
    }

    if let Some(c) = shortest_cycle(g, rem, need, best.as_ref().map_or(rem.len(), |b| b.len())) {
        consider(&mut best, c);
    }

    let mut c = best?;
    if c.len() > need {
        let set: VertexSet = c.iter().copied().collect();
        if let Some(shorter) = shortest_cycle(g, set, need, c.len() - 1) {
            c = shorter;
        }
    }
    Some(c)
}

/// Two distinguished fixed cycles and the vertices used to exchange
/// between them and the remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeContext {
    /// Cycle whose neighborhood of the path ends is nearly full.
    pub p_index: usize,
    /// Cycle that the probe vertices see densely; `None` when only the
    /// remainder and `p` take part.
    pub q_index: Option<usize>,
    /// X-vertex of cycle `p` missed by the Y end of the path.
    pub x_star: Vertex,
    /// Y-vertex of cycle `p` not next to `x_star` on the cycle.
    pub y_star: Option<Vertex>,
    /// The path oriented to start on the X side when possible.
    pub path: Vec<Vertex>,
}

impl ExchangeContext {
    /// `{u_1, u_2, u_{s-1}, u_s, x*, y*}` without repeats.
    pub fn probes(&self) -> Vec<Vertex> {
        let p = &self.path;
        let s = p.len();
        let mut out = Vec::new();
        let mut push = |v: Vertex| {
            if !out.contains(&v) {
                out.push(v);
            }
        };
        for idx in [0, 1, s.saturating_sub(2), s.saturating_sub(1)] {
            if idx < s {
                push(p[idx]);
            }
        }
        push(self.x_star);
        if let Some(y) = self.y_star {
            push(y);
        }
        out
    }

    fn path_ends(&self) -> Vec<Vertex> {
        let p = &self.path;
        let s = p.len();
        let mut out: Vec<Vertex> = Vec::new();
        for idx in [0, 1, s.saturating_sub(2), s.saturating_sub(1)] {
            if idx < s && !out.contains(&p[idx]) {
                out.push(p[idx]);
            }
        }
        out
    }
}

fn oriented_path(st: &SearchState, g: &BipartiteGraph) -> Vec<Vertex> {
    let mut path = st.path().to_vec();
    if !path.is_empty() && g.side(path[0]) == Side::Y && g.side(path[path.len() - 1]) == Side::X {
        path.reverse();
    }
    path
}

/// Picks cycle `p` with `d(u_1, C_p) + d(u_s, C_p) >= |C_p| - 1` at its
/// target length, plus `x*` and `y*` on it. The returned context has no `q`.
pub fn select_anchor(st: &SearchState, g: &BipartiteGraph) -> Option<ExchangeContext> {
    let path = oriented_path(st, g);
    if path.is_empty() {
        return None;
    }
    let (u1, us) = (path[0], path[path.len() - 1]);
    let p_index = st.fixed().iter().position(|c| {
        c.len() == c.target() && g.deg_in(u1, c.set()) + g.deg_in(us, c.set()) + 1 >= c.target()
    })?;
    let cp = &st.fixed()[p_index];
    let xs: Vec<Vertex> = cp.vertices().iter().copied().filter(|&v| g.side(v) == Side::X).collect();
    let x_star = xs
        .iter()
        .copied()
        .find(|&x| !g.has_edge(us, x))
        .unwrap_or(xs[0]);
    let (succ, pred) = (cp.succ(x_star), cp.pred(x_star));
    let y_star = cp
        .vertices()
        .iter()
        .copied()
        .find(|&v| g.side(v) == Side::Y && Some(v) != succ && Some(v) != pred);
    Some(ExchangeContext {
        p_index,
        q_index: None,
        x_star,
        y_star,
        path,
    })
}

/// With the path Hamiltonian in the remainder, finds `p` as in
/// [`select_anchor`] and then a second cycle `q != p` at its target length
/// with `Σ_{z ∈ S} d(z, C_q) >= 3|C_q| - 5` over the probe set `S`.
pub fn select_concentration(st: &SearchState, g: &BipartiteGraph) -> Option<ExchangeContext> {
    if !st.is_hamiltonian_path() {
        return None;
    }
    let mut ctx = select_anchor(st, g)?;
    let probes = ctx.probes();
    ctx.q_index = st.fixed().iter().enumerate().position(|(i, c)| {
        i != ctx.p_index
            && c.len() == c.target()
            && probes.iter().map(|&z| g.deg_in(z, c.set())).sum::<usize>() + 5 >= 3 * c.target()
    });
    ctx.q_index.map(|_| ctx)
}

/// Endpoint degree bound at a stalled state:
/// `d(z, G₂) + d(z, C_p) <= |C_k|/2 + |C_p|/2 - 1` for `z` in `{u_1, u_s}`.
pub fn endpoint_bound_holds(st: &SearchState, g: &BipartiteGraph, ctx: &ExchangeContext) -> bool {
    let cp = &st.fixed()[ctx.p_index];
    let bound = st.last_target() / 2 + cp.target() / 2 - 1;
    let path = &ctx.path;
    [path[0], path[path.len() - 1]]
        .iter()
        .all(|&z| g.deg_in(z, st.remainder()) + g.deg_in(z, cp.set()) <= bound)
}

fn subsets_up_to_two(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = vec![vec![]];
    for (i, &a) in items.iter().enumerate() {
        out.push(vec![a]);
        for &b in &items[i + 1..] {
            out.push(vec![a, b]);
        }
    }
    out
}

struct Part {
    set: VertexSet,
    target: usize,
}

/// Bounded swaps among the remainder, `C_p` and (when present) `C_q`: at
/// most two vertices leave each part (remainder: the path's first two and
/// last two vertices; `C_p`: `x*`, `y*`; `C_q`: any) and each lands in one of
/// the other parts, at most two arriving per part. A pattern succeeds when
/// every rebuilt part holds a cycle of at least its target length; the
/// first success becomes the full packing.
pub fn move_double_exchange(
    st: &SearchState,
    g: &BipartiteGraph,
    ctx: &ExchangeContext,
) -> Option<Packing> {
    let cp = &st.fixed()[ctx.p_index];
    let mut parts = vec![
        Part {
            set: st.remainder(),
            target: st.last_target(),
        },
        Part {
            set: cp.set(),
            target: cp.target(),
        },
    ];
    let mut movable: Vec<Vec<Vertex>> = vec![ctx.path_ends(), {
        let mut v = vec![ctx.x_star];
        v.extend(ctx.y_star);
        v
    }];
    if let Some(q) = ctx.q_index {
        let cq = &st.fixed()[q];
        parts.push(Part {
            set: cq.set(),
            target: cq.target(),
        });
        movable.push(cq.vertices().to_vec());
    }
    let nparts = parts.len();
    let outs: Vec<Vec<Vec<Vertex>>> = movable.iter().map(|m| subsets_up_to_two(m)).collect();

    let mut memo: HashMap<(u128, usize), Option<Vec<Vertex>>> = HashMap::new();
    let mut cycle_in = |set: VertexSet, target: usize| -> Option<Vec<Vertex>> {
        memo.entry((set.bits(), target))
            .or_insert_with(|| {
                if set.len() < target
                    || set.intersection(g.x_side()).len() < target / 2
                    || set.intersection(g.y_side()).len() < target / 2
                {
                    None
                } else {
                    shortest_cycle(g, set, target, set.len())
                }
            })
            .clone()
    };

    let mut choice = vec![0usize; nparts];
    loop {
        let out_sets: Vec<&Vec<Vertex>> = (0..nparts).map(|i| &outs[i][choice[i]]).collect();
        let moved: Vec<(Vertex, usize)> = out_sets
            .iter()
            .enumerate()
            .flat_map(|(i, vs)| vs.iter().map(move |&v| (v, i)))
            .collect();
        // each moved vertex goes to one of the other parts: base nparts-1 digits
        let dests = nparts - 1;
        let combos = dests.pow(moved.len() as u32);
        for code in 0..combos {
            let mut c = code;
            let mut new_sets: Vec<VertexSet> = parts.iter().map(|p| p.set).collect();
            let mut arrivals = vec![0usize; nparts];
            for &(v, from) in &moved {
                let mut to = c % dests;
                c /= dests;
                if to >= from {
                    to += 1;
                }
                new_sets[from].remove(v);
                new_sets[to].insert(v);
                arrivals[to] += 1;
            }
            if arrivals.iter().any(|&a| a > 2) {
                continue;
            }
            // small parts first, the remainder last
            let mut found = vec![None; nparts];
            let mut ok = true;
            for idx in (0..nparts).rev() {
                match cycle_in(new_sets[idx], parts[idx].target) {
                    Some(cyc) => found[idx] = Some(cyc),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut cycles = st.cycles();
                cycles[ctx.p_index] = found[1].take().unwrap();
                if let Some(q) = ctx.q_index {
                    cycles[q] = found[2].take().unwrap();
                }
                cycles.push(found[0].take().unwrap());
                return Some(Packing::new(cycles));
            }
        }
        // next choice of out-sets
        let mut i = 0;
        loop {
            if i == nparts {
                return None;
            }
            choice[i] += 1;
            if choice[i] < outs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::is_cycle;
    use crate::generate::gen_complete;

    /// Longest path in `G[set]` by exhaustive search.
    fn longest_path_len(g: &BipartiteGraph, set: VertexSet) -> usize {
        fn rec(g: &BipartiteGraph, set: VertexSet, cur: Vertex, seen: VertexSet) -> usize {
            1 + g
                .neighbors(cur)
                .intersection(set)
                .difference(seen)
                .iter()
                .map(|w| rec(g, set, w, seen.with(w)))
                .max()
                .unwrap_or(0)
        }
        set.iter()
            .map(|s| rec(g, set, s, VertexSet::singleton(s)))
            .max()
            .unwrap_or(0)
    }

    /// Every cycle vertex sequence of `G[set]` by brute force (both
    /// directions, all starts).
    fn all_cycle_lengths(g: &BipartiteGraph, set: VertexSet) -> Vec<usize> {
        let mut out = Vec::new();
        for s in set {
            let mut stack = vec![vec![s]];
            while let Some(p) = stack.pop() {
                let cur = *p.last().unwrap();
                if p.len() >= 4 && g.has_edge(cur, s) {
                    out.push(p.len());
                }
                for w in g.neighbors(cur).intersection(set) {
                    if !p.contains(&w) {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
        }
        out
    }

    /// 8-cycle on X = {0,1,2,3}, Y = {5,6,7,8} plus X-vertex 4 adjacent to
    /// 5, 6 and 7 (three alternate cycle vertices), and spare vertices 9..
    fn eight_cycle_with_apex(extra: usize) -> (BipartiteGraph, Vec<Vertex>) {
        let cyc = vec![0, 5, 1, 6, 2, 7, 3, 8];
        // x side 0..=4 plus extra X spares; y side afterwards
        let xs = 5 + extra;
        let shift = |v: Vertex| if v >= 5 { v - 5 + xs } else { v };
        let mut edges: Vec<(Vertex, Vertex)> =
            (0..8).map(|i| (shift(cyc[i]), shift(cyc[(i + 1) % 8]))).collect();
        edges.extend([(4, shift(5)), (4, shift(6)), (4, shift(7))]);
        let g = BipartiteGraph::from_edges(xs, 4 + extra, edges).unwrap();
        (g, cyc.into_iter().map(shift).collect())
    }

    #[test]
    fn shrink_through_apex() {
        let (g, cyc) = eight_cycle_with_apex(0);
        let st = SearchState::new(&g, vec![cyc], &[6], 4, vec![4]).unwrap();
        // oracle: a 6-cycle exists in C + apex
        assert!(all_cycle_lengths(&g, g.vertices()).contains(&6));
        let next = move_shrink(&st, &g).unwrap();
        assert!(next.is_consistent(&g));
        assert_eq!(next.fixed()[0].len(), 6);
        assert!(next.fixed()[0].vertices().contains(&4));
        assert_eq!(next.potential().cycle_vertices, 6);
        assert!(next.potential() > st.potential());
    }

    #[test]
    fn shrink_noop_cases() {
        let g = gen_complete(6).unwrap();
        let st = SearchState::new(&g, vec![vec![0, 6, 1, 7, 2, 8]], &[6], 6, vec![3]).unwrap();
        assert!(move_shrink(&st, &g).is_none());
        // long cycle but no vertex or chord helps
        let (g, cyc) = eight_cycle_with_apex(0);
        let bare = BipartiteGraph::from_edges(
            g.x_size(),
            g.y_size(),
            g.edges().filter(|&(x, _)| x != 4),
        )
        .unwrap();
        let st = SearchState::new(&bare, vec![cyc], &[6], 4, vec![4]).unwrap();
        assert!(move_shrink(&st, &bare).is_none());
    }

    #[test]
    fn extend_single_vertex() {
        let g = gen_complete(3).unwrap();
        let st = SearchState::new(&g, vec![], &[], 6, vec![0]).unwrap();
        let next = move_extend_path(&st, &g).unwrap();
        assert_eq!(next.path().len(), 2);
        assert!(next.potential() > st.potential());
    }

    #[test]
    fn extend_stops_at_hamilton_path() {
        let g = gen_complete(3).unwrap();
        let st = SearchState::new(&g, vec![], &[], 6, vec![0, 3, 1, 4, 2, 5]).unwrap();
        assert!(move_extend_path(&st, &g).is_none());
    }

    #[test]
    fn extend_splices_two_edges() {
        // edges a-b and c-d joined by the cross edge b-c: X = {0: a, 1: c},
        // Y = {2: b, 3: d}; path is the edge c-d
        let g = BipartiteGraph::from_edges(2, 2, [(0, 2), (1, 3), (1, 2)]).unwrap();
        let mut st = SearchState::new(&g, vec![], &[], 4, vec![1, 3]).unwrap();
        while let Some(next) = move_extend_path(&st, &g) {
            assert!(next.is_consistent(&g));
            st = next;
        }
        assert_eq!(st.path().len(), 4);
        assert_eq!(longest_path_len(&g, g.vertices()), 4);
    }

    #[test]
    fn extend_reaches_longest_path_on_small_graphs() {
        for seed in 0..40u64 {
            let g = crate::generate::gen_random_mindeg_with(4, 4, 1, 0.3, seed).unwrap();
            let mut st = SearchState::new(&g, vec![], &[], 4, vec![]).unwrap();
            while let Some(n) = move_extend_path(&st, &g) {
                assert!(n.potential() > st.potential());
                st = n;
            }
            assert!(st.is_consistent(&g));
            let p = st.path();
            let off = st.off_path();
            assert!(g.neighbors(p[0]).intersection(off).is_empty());
            assert!(g.neighbors(p[p.len() - 1]).intersection(off).is_empty());
            let comp = crate::cycles::reachable(&g, st.path()[0], g.vertices());
            assert!(
                2 * st.path().len() >= longest_path_len(&g, comp),
                "seed {seed}: {:?} in {g:?}",
                st.path()
            );
        }
    }

    #[test]
    fn exchange_with_full_neighbor() {
        // C = 0-6-1-7-2-8 in K_{6,6}-like host. Path end 3 (X) sees 6;
        // off-path 9 (Y) sees all X of C, so any v in N(3, C) can leave.
        let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 6), (6, 1), (1, 7), (7, 2), (2, 8), (8, 0)];
        edges.extend([(3, 6), (0, 9), (1, 9), (2, 9), (3, 10), (4, 10), (4, 11)]);
        let g = BipartiteGraph::from_edges(6, 6, edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))))
            .unwrap();
        let st = SearchState::new(&g, vec![vec![0, 6, 1, 7, 2, 8]], &[6], 6, vec![4, 10, 3]).unwrap();
        let next = move_exchange_one(&st, &g).unwrap();
        assert!(next.is_consistent(&g));
        assert_eq!(next.path(), &[4, 10, 3, 6]);
        assert!(next.fixed()[0].set().contains(9));
        assert_eq!(next.fixed()[0].len(), 6);
        assert!(next.potential() > st.potential());
    }

    #[test]
    fn exchange_with_degree_two_and_three() {
        // c = 6; u'' (Y) sees 2 of the 3 X-vertices, u' (X) sees all 3 Y.
        // C = 0-6-1-7-2-8, u' = 3 (X) on path end, u'' = 9 (Y) off path
        let mut edges = vec![(0, 6), (1, 6), (1, 7), (2, 7), (2, 8), (0, 8)];
        edges.extend([(3, 6), (3, 7), (3, 8), (0, 9), (1, 9), (3, 10), (4, 10)]);
        let g = BipartiteGraph::from_edges(6, 6, edges).unwrap();
        let st = SearchState::new(&g, vec![vec![0, 6, 1, 7, 2, 8]], &[6], 6, vec![4, 10, 3]).unwrap();
        let next = move_exchange_one(&st, &g).unwrap();
        assert!(next.is_consistent(&g));
        assert_eq!(next.path().len(), 4);
        assert!(next.fixed()[0].set().contains(9));
    }

    #[test]
    fn exchange_noop_when_degrees_low() {
        let mut edges = vec![(0, 6), (1, 6), (1, 7), (2, 7), (2, 8), (0, 8)];
        edges.extend([(3, 6), (0, 9), (3, 10), (4, 10)]);
        let g = BipartiteGraph::from_edges(6, 6, edges).unwrap();
        let st = SearchState::new(&g, vec![vec![0, 6, 1, 7, 2, 8]], &[6], 6, vec![4, 10, 3]).unwrap();
        assert!(move_exchange_one(&st, &g).is_none());
    }

    #[test]
    fn close_cycle_closing_edge() {
        let g = gen_complete(3).unwrap();
        let st = SearchState::new(&g, vec![], &[], 6, vec![0, 3, 1, 4, 2, 5]).unwrap();
        let c = move_close_cycle(&st, &g).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cycle(&g, &c));
    }

    #[test]
    fn close_cycle_pigeonhole() {
        let g = gen_complete(3).unwrap();
        let st = SearchState::new(&g, vec![], &[], 8, vec![0]).unwrap();
        assert!(move_close_cycle(&st, &g).is_none());
    }

    #[test]
    fn close_cycle_crossing_chords() {
        // path u1..u8 = 0,4,1,5,2,6,3,7 (X 0..4, Y 4..8) with chords
        // u1-u6 (0-6) and u8-u3 (7-1): cycle u1 u2 u3 u8 u7 u6 has length 6
        let path = [0, 4, 1, 5, 2, 6, 3, 7];
        let mut edges: Vec<(Vertex, Vertex)> = path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        edges.extend([(0, 6), (1, 7)]);
        let g = BipartiteGraph::from_edges(4, 4, edges).unwrap();
        let lens = all_cycle_lengths(&g, g.vertices());
        assert!(lens.contains(&6));
        assert!(!lens.contains(&8));
        let st = SearchState::new(&g, vec![], &[], 6, path.to_vec()).unwrap();
        let c = move_close_cycle(&st, &g).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cycle(&g, &c));
    }

    #[test]
    fn concentration_full_adjacency() {
        // remainder path P = 0-12-1 .. and two fixed 6-cycles; the probes of q
        // see the whole opposite side of C_q
        let g = gen_complete(9).unwrap();
        let cp = vec![0, 9, 1, 10, 2, 11];
        let cq = vec![3, 12, 4, 13, 5, 14];
        let path = vec![6, 15, 7, 16, 8, 17];
        let st = SearchState::new(&g, vec![cp, cq], &[6, 6], 6, path).unwrap();
        let ctx = select_concentration(&st, &g).unwrap();
        assert_eq!(ctx.p_index, 0);
        assert_eq!(ctx.q_index, Some(1));
        let probes = ctx.probes();
        assert_eq!(probes.len(), 6);
        let sum: usize = probes
            .iter()
            .map(|&z| g.deg_in(z, st.fixed()[1].set()))
            .sum();
        assert_eq!(sum, 18);
        let cpc = &st.fixed()[0];
        assert_eq!(g.side(ctx.x_star), Side::X);
        let y = ctx.y_star.unwrap();
        assert_eq!(g.side(y), Side::Y);
        assert!(cpc.succ(ctx.x_star) != Some(y) && cpc.pred(ctx.x_star) != Some(y));
    }

    #[test]
    fn concentration_none_when_sparse() {
        // two disjoint 6-cycles and a 6-vertex path, with only the edges
        // needed for p; q receives nothing from the probes
        let cp = [0, 9, 1, 10, 2, 11];
        let cq = [3, 12, 4, 13, 5, 14];
        let path = [6, 15, 7, 16, 8, 17];
        let mut edges = Vec::new();
        for c in [&cp[..], &cq[..]] {
            for i in 0..6 {
                let (a, b) = (c[i], c[(i + 1) % 6]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        for w in path.windows(2) {
            edges.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        // u1 = 6 sees all Y of C_p, u_s = 17 sees two X of C_p
        edges.extend([(6, 9), (6, 10), (6, 11), (0, 17), (1, 17)]);
        let g = BipartiteGraph::from_edges(9, 9, edges).unwrap();
        let st = SearchState::new(&g, vec![cp.to_vec(), cq.to_vec()], &[6, 6], 6, path.to_vec()).unwrap();
        assert!(select_concentration(&st, &g).is_none());
        let anchor = select_anchor(&st, &g).unwrap();
        assert_eq!(anchor.p_index, 0);
        assert_eq!(anchor.x_star, 2);
        assert!(endpoint_bound_holds(&st, &g, &anchor));
        assert_eq!(g.degree_in(17, st.fixed()[0].set()).unwrap(), 2);
    }

    #[test]
    fn double_exchange_single_swap_pattern() {
        // Remainder path 6-15-7-16-8-17 has no 6-cycle, but C_q + u_s - v and
        // G2 + v - u_s both close once v=14 joins the remainder.
        let cp = [0, 9, 1, 10, 2, 11];
        let cq = [3, 12, 4, 13, 5, 14];
        let path = [6, 15, 7, 16, 8, 17];
        let mut edges = Vec::new();
        for c in [&cp[..], &cq[..]] {
            for i in 0..6 {
                let (a, b) = (c[i], c[(i + 1) % 6]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        for w in path.windows(2) {
            edges.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        // u_s = 17 replaces 14 in C_q (17 ~ 3, 17 ~ 5); 14 closes the path
        // between u_1 = 6 and u_{s-1} = 8
        edges.extend([(3, 17), (5, 17), (6, 14), (8, 14)]);
        // give p a reason to be chosen
        edges.extend([(6, 9), (6, 10), (6, 11), (0, 17), (1, 17)]);
        let g = BipartiteGraph::from_edges(9, 9, edges).unwrap();
        let st = SearchState::new(&g, vec![cp.to_vec(), cq.to_vec()], &[6, 6], 6, path.to_vec()).unwrap();
        assert!(move_close_cycle(&st, &g).is_none());
        let mut ctx = select_anchor(&st, &g).unwrap();
        ctx.q_index = Some(1);
        let pk = move_double_exchange(&st, &g, &ctx).unwrap();
        let prof = crate::profile::CycleProfile::new(&[6, 6, 6], crate::profile::Mode::Theorem).unwrap();
        assert!(crate::verifier::verify_packing(&g, &prof, &pk).ok);
    }

    #[test]
    fn double_exchange_no_pattern() {
        let cp = [0, 9, 1, 10, 2, 11];
        let path = [6, 15, 7, 16, 8, 17];
        let mut edges = Vec::new();
        for i in 0..6 {
            let (a, b) = (cp[i], cp[(i + 1) % 6]);
            edges.push((a.min(b), a.max(b)));
        }
        for w in path.windows(2) {
            edges.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        edges.extend([(6, 9), (6, 10), (6, 11), (0, 17), (1, 17)]);
        let g = BipartiteGraph::from_edges(9, 9, edges).unwrap();
        let st = SearchState::new(&g, vec![cp.to_vec()], &[6], 6, path.to_vec()).unwrap();
        let ctx = select_anchor(&st, &g).unwrap();
        assert!(move_double_exchange(&st, &g, &ctx).is_none());
    }
}
