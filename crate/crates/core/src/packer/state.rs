use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::is_cycle;
use crate::graph::{BipartiteGraph, Vertex, VertexSet};

/// Lexicographic search potential: fewer vertices on the fixed cycles first,
/// then a longer remainder path, then more edges induced by the fixed cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Potential {
    pub cycle_vertices: usize,
    pub path_len: usize,
    pub induced_edges: usize,
}

impl Ord for Potential {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cycle_vertices
            .cmp(&self.cycle_vertices)
            .then(self.path_len.cmp(&other.path_len))
            .then(self.induced_edges.cmp(&other.induced_edges))
    }
}

impl PartialOrd for Potential {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("fixed cycle {0} is not a cycle of the graph")]
    NotACycle(usize),
    #[error("fixed cycle {index} has length {len}, below its target {target}")]
    TooShort { index: usize, len: usize, target: usize },
    #[error("fixed cycles overlap")]
    Overlap,
    #[error("{cycles} fixed cycles but {targets} targets")]
    TargetCount { cycles: usize, targets: usize },
    #[error("path is not a path in the remainder")]
    BadPath,
}

/// One of the already-placed cycles, oriented by its vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCycle {
    vertices: Vec<Vertex>,
    set: VertexSet,
    target: usize,
    induced_edges: usize,
}

impl FixedCycle {
    fn new(g: &BipartiteGraph, vertices: Vec<Vertex>, target: usize) -> Self {
        let set: VertexSet = vertices.iter().copied().collect();
        let induced_edges = induced_edge_count(g, set);
        FixedCycle {
            vertices,
            set,
            target,
            induced_edges,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn set(&self) -> VertexSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn induced_edges(&self) -> usize {
        self.induced_edges
    }

    /// Successor of `v` along the orientation.
    pub fn succ(&self, v: Vertex) -> Option<Vertex> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        Some(self.vertices[(i + 1) % self.vertices.len()])
    }

    /// Predecessor of `v` along the orientation.
    pub fn pred(&self, v: Vertex) -> Option<Vertex> {
        let i = self.vertices.iter().position(|&w| w == v)?;
        Some(self.vertices[(i + self.vertices.len() - 1) % self.vertices.len()])
    }
}

pub(crate) fn induced_edge_count(g: &BipartiteGraph, set: VertexSet) -> usize {
    set.intersection(g.x_side())
        .iter()
        .map(|x| g.deg_in(x, set))
        .sum()
}

/// Partial solution: `k - 1` fixed cycles, the remainder they leave, and a
/// path inside the remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    fixed: Vec<FixedCycle>,
    remainder: VertexSet,
    path: Vec<Vertex>,
    last_target: usize,
    potential: Potential,
}

impl SearchState {
    /// Validates the pieces. `targets[i]` is the minimum length of
    /// `fixed[i]`; `last_target` is the cycle still to be built.
    pub fn new(
        g: &BipartiteGraph,
        fixed: Vec<Vec<Vertex>>,
        targets: &[usize],
        last_target: usize,
        path: Vec<Vertex>,
    ) -> Result<Self, StateError> {
        if fixed.len() != targets.len() {
            return Err(StateError::TargetCount {
                cycles: fixed.len(),
                targets: targets.len(),
            });
        }
        let mut used = VertexSet::EMPTY;
        let mut cycles = Vec::with_capacity(fixed.len());
        for (index, (c, &target)) in fixed.into_iter().zip(targets).enumerate() {
            if !is_cycle(g, &c) {
                return Err(StateError::NotACycle(index));
            }
            if c.len() < target {
                return Err(StateError::TooShort {
                    index,
                    len: c.len(),
                    target,
                });
            }
            let fc = FixedCycle::new(g, c, target);
            if !fc.set.intersection(used).is_empty() {
                return Err(StateError::Overlap);
            }
            used = used.union(fc.set);
            cycles.push(fc);
        }
        let remainder = g.vertices().difference(used);
        if !is_path_in(g, &path, remainder) {
            return Err(StateError::BadPath);
        }
        let mut st = SearchState {
            fixed: cycles,
            remainder,
            path,
            last_target,
            potential: Potential {
                cycle_vertices: 0,
                path_len: 0,
                induced_edges: 0,
            },
        };
        st.potential = st.recompute_potential(g);
        Ok(st)
    }

    /// Fixed cycles from the prefix solve and a one-vertex path at the
    /// smallest remainder vertex.
    pub(crate) fn seeded(
        g: &BipartiteGraph,
        fixed: Vec<Vec<Vertex>>,
        targets: &[usize],
        last_target: usize,
    ) -> Self {
        let used: VertexSet = fixed.iter().flatten().copied().collect();
        let path = g.vertices().difference(used).first().into_iter().collect();
        Self::new(g, fixed, targets, last_target, path).expect("prefix solve yields a valid state")
    }

    pub fn fixed(&self) -> &[FixedCycle] {
        &self.fixed
    }

    pub fn remainder(&self) -> VertexSet {
        self.remainder
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn path_set(&self) -> VertexSet {
        self.path.iter().copied().collect()
    }

    /// Remainder vertices not on the path.
    pub fn off_path(&self) -> VertexSet {
        self.remainder.difference(self.path_set())
    }

    pub fn last_target(&self) -> usize {
        self.last_target
    }

    pub fn is_hamiltonian_path(&self) -> bool {
        !self.path.is_empty() && self.path.len() == self.remainder.len()
    }

    /// Incrementally maintained potential.
    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn recompute_potential(&self, g: &BipartiteGraph) -> Potential {
        Potential {
            cycle_vertices: self.fixed.iter().map(|c| c.vertices.len()).sum(),
            path_len: self.path.len(),
            induced_edges: self.fixed.iter().map(|c| induced_edge_count(g, c.set)).sum(),
        }
    }

    /// Every structural invariant, recomputed from scratch.
    pub fn is_consistent(&self, g: &BipartiteGraph) -> bool {
        let mut used = VertexSet::EMPTY;
        for c in &self.fixed {
            if !is_cycle(g, &c.vertices)
                || c.vertices.len() < c.target
                || c.vertices.len() % 2 == 1
                || !c.set.intersection(used).is_empty()
            {
                return false;
            }
            used = used.union(c.set);
        }
        self.remainder == g.vertices().difference(used)
            && is_path_in(g, &self.path, self.remainder)
            && self.potential == self.recompute_potential(g)
    }

    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        self.fixed.iter().map(|c| c.vertices.clone()).collect()
    }

    /// Replaces fixed cycle `i`; freed vertices return to the remainder and
    /// newly used ones leave it. The path is cut to its longest segment that
    /// stays in the remainder.
    pub(crate) fn replace_cycle(&mut self, g: &BipartiteGraph, i: usize, vertices: Vec<Vertex>) {
        let old = &self.fixed[i];
        let new = FixedCycle::new(g, vertices, old.target);
        self.potential.cycle_vertices = self.potential.cycle_vertices + new.len() - old.len();
        self.potential.induced_edges =
            self.potential.induced_edges + new.induced_edges - old.induced_edges;
        self.remainder = self.remainder.union(old.set).difference(new.set);
        self.fixed[i] = new;
        if self.path.iter().any(|&v| !self.remainder.contains(v)) {
            let cut = longest_segment_within(&self.path, self.remainder);
            self.set_path(cut);
        }
    }

    pub(crate) fn set_path(&mut self, path: Vec<Vertex>) {
        self.potential.path_len = path.len();
        self.path = path;
    }
}

/// Longest contiguous run of `path` inside `allowed` (first one on ties).
pub(crate) fn longest_segment_within(path: &[Vertex], allowed: VertexSet) -> Vec<Vertex> {
    path.split(|&v| !allowed.contains(v))
        .fold(&[][..], |best, seg| if seg.len() > best.len() { seg } else { best })
        .to_vec()
}

pub(crate) fn is_path_in(g: &BipartiteGraph, path: &[Vertex], allowed: VertexSet) -> bool {
    let set: VertexSet = path.iter().copied().collect();
    set.len() == path.len()
        && set.is_subset(allowed)
        && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_complete;

    #[test]
    fn potential_order_is_lexicographic() {
        let p = |c, l, e| Potential {
            cycle_vertices: c,
            path_len: l,
            induced_edges: e,
        };
        assert!(p(6, 0, 0) > p(8, 10, 10));
        assert!(p(6, 3, 0) > p(6, 2, 99));
        assert!(p(6, 3, 7) > p(6, 3, 6));
        assert_eq!(p(6, 3, 7).cmp(&p(6, 3, 7)), Ordering::Equal);
    }

    #[test]
    fn construction_and_consistency() {
        let g = gen_complete(6).unwrap();
        let c = vec![0, 6, 1, 7, 2, 8];
        let st = SearchState::new(&g, vec![c.clone()], &[6], 6, vec![3, 9, 4]).unwrap();
        assert!(st.is_consistent(&g));
        assert_eq!(st.potential().cycle_vertices, 6);
        assert_eq!(st.potential().induced_edges, 9);
        assert_eq!(st.potential().path_len, 3);
        assert_eq!(st.off_path().iter().collect::<Vec<_>>(), vec![5, 10, 11]);
        assert_eq!(st.fixed()[0].succ(8), Some(0));
        assert_eq!(st.fixed()[0].pred(0), Some(8));

        assert_eq!(
            SearchState::new(&g, vec![c.clone()], &[8], 6, vec![]),
            Err(StateError::TooShort { index: 0, len: 6, target: 8 })
        );
        assert_eq!(
            SearchState::new(&g, vec![c.clone(), c.clone()], &[6, 6], 6, vec![]),
            Err(StateError::Overlap)
        );
        assert_eq!(
            SearchState::new(&g, vec![c], &[6], 6, vec![0]),
            Err(StateError::BadPath)
        );
    }

    #[test]
    fn replace_cycle_updates_incrementally() {
        let g = gen_complete(6).unwrap();
        let big = vec![0, 6, 1, 7, 2, 8, 3, 9];
        let mut st = SearchState::new(&g, vec![big], &[6], 4, vec![4, 10, 5]).unwrap();
        st.replace_cycle(&g, 0, vec![0, 6, 1, 7, 4, 10]);
        assert!(st.is_consistent(&g));
        // 4 and 10 left the remainder, so only vertex 5 survives of the path
        assert_eq!(st.path(), &[5]);
        assert!(st.remainder().contains(9) && st.remainder().contains(2));
    }

    #[test]
    fn longest_segment() {
        let allowed = VertexSet::from_iter([1, 2, 4, 5, 6]);
        assert_eq!(longest_segment_within(&[1, 2, 3, 4, 5, 6], allowed), vec![4, 5, 6]);
        assert_eq!(longest_segment_within(&[3], allowed), Vec::<Vertex>::new());
    }
}
