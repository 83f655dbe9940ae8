//! Exact packing oracle for small hosts.
//!
//! Backtracks over profile entries longest first. Each level enumerates the
//! vertex sets of cycles with length in `[c_i, |unused| - Σ_{j>i} c_j]` and
//! recurses on what is left; the last level only needs any cycle of length
//! at least `c_k`. Sets already known to fail at a level are memoized.

use std::collections::HashSet;

use thiserror::Error;

use crate::cycles::{CycleFinder, Search};
use crate::graph::{BipartiteGraph, Vertex, VertexSet};
use crate::profile::CycleProfile;

use super::Packing;

pub const DEFAULT_ORACLE_LIMIT: usize = 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {order} vertices, above the oracle limit {limit}")]
    TooLarge { order: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Packed(Packing),
    Infeasible,
}

impl OracleVerdict {
    pub fn is_packed(&self) -> bool {
        matches!(self, OracleVerdict::Packed(_))
    }
}

/// [`brute_force_pack_with_limit`] at the default limit.
pub fn brute_force_pack(g: &BipartiteGraph, prof: &CycleProfile) -> Result<OracleVerdict, OracleError> {
    brute_force_pack_with_limit(g, prof, DEFAULT_ORACLE_LIMIT)
}

pub fn brute_force_pack_with_limit(
    g: &BipartiteGraph,
    prof: &CycleProfile,
    limit: usize,
) -> Result<OracleVerdict, OracleError> {
    if g.order() > limit {
        return Err(OracleError::TooLarge {
            order: g.order(),
            limit,
        });
    }
    let mut search = Oracle {
        g,
        lengths: prof.lengths(),
        finder: CycleFinder::new(g),
        dead: HashSet::new(),
    };
    let mut chosen = Vec::new();
    if !search.level(0, g.vertices(), 0, &mut chosen) {
        return Ok(OracleVerdict::Infeasible);
    }
    let cycles = chosen
        .into_iter()
        .map(|s| {
            search
                .finder
                .hamiltonian_cycle(s)
                .found()
                .expect("chosen sets carry a cycle")
        })
        .collect();
    Ok(OracleVerdict::Packed(Packing::new(cycles)))
}

/// Vertices of `within` that can still lie on a cycle: repeatedly strip
/// vertices with fewer than two neighbors left.
pub(crate) fn two_core(g: &BipartiteGraph, within: VertexSet) -> VertexSet {
    let mut core = within;
    loop {
        let weak: VertexSet = core.iter().filter(|&v| g.deg_in(v, core) < 2).collect();
        if weak.is_empty() {
            return core;
        }
        core = core.difference(weak);
    }
}

struct Oracle<'g> {
    g: &'g BipartiteGraph,
    lengths: &'g [usize],
    finder: CycleFinder<'g>,
    dead: HashSet<(usize, u128, Vertex)>,
}

impl Oracle<'_> {
    /// Places cycles `i..` inside `unused`. When `c_i == c_{i-1}` the new set
    /// must start after `floor` so equal targets are tried in one order only.
    fn level(&mut self, i: usize, unused: VertexSet, floor: Vertex, chosen: &mut Vec<VertexSet>) -> bool {
        if i == self.lengths.len() {
            return true;
        }
        let core = two_core(self.g, unused);
        let need: usize = self.lengths[i..].iter().sum();
        let half = need / 2;
        if core.len() < need
            || core.intersection(self.g.x_side()).len() < half
            || core.intersection(self.g.y_side()).len() < half
        {
            return false;
        }
        let key = (i, core.bits(), floor);
        if self.dead.contains(&key) {
            return false;
        }
        let min = self.lengths[i];
        let candidates = if i + 1 == self.lengths.len() {
            let within = core.difference(VertexSet::range(floor));
            match self.finder.shortest_cycle_at_least(within, min) {
                Search::Found(c) => vec![c.into_iter().collect()],
                _ => vec![],
            }
        } else {
            let max = core.len() - (need - min);
            let within = core.difference(VertexSet::range(floor));
            self.finder
                .cycle_vertex_sets(within, min, max)
                .found()
                .expect("oracle searches are unbounded")
        };
        for s in candidates {
            let next_floor = match self.lengths.get(i + 1) {
                Some(&c) if c == min => s.first().unwrap() + 1,
                _ => 0,
            };
            chosen.push(s);
            if self.level(i + 1, core.difference(s), next_floor, chosen) {
                return true;
            }
            chosen.pop();
        }
        self.dead.insert(key);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_complete, gen_sharpness};
    use crate::profile::Mode;
    use crate::verifier::verify_packing;

    #[test]
    fn complete_graph_packs() {
        let g = gen_complete(3).unwrap();
        let prof = CycleProfile::new(&[6], Mode::Theorem).unwrap();
        let OracleVerdict::Packed(pk) = brute_force_pack(&g, &prof).unwrap() else {
            panic!("K33 has a 6-cycle");
        };
        assert!(verify_packing(&g, &prof, &pk).ok);
    }

    #[test]
    fn six_cycle_cannot_hold_two() {
        let edges = [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)];
        let g = BipartiteGraph::from_edges(3, 3, edges).unwrap();
        let prof = CycleProfile::new(&[6, 6], Mode::Theorem).unwrap();
        assert_eq!(brute_force_pack(&g, &prof).unwrap(), OracleVerdict::Infeasible);
        let one = CycleProfile::new(&[6], Mode::Theorem).unwrap();
        assert!(brute_force_pack(&g, &one).unwrap().is_packed());
    }

    #[test]
    fn sharpness_host_refuted() {
        let (g, prof) = gen_sharpness(2).unwrap();
        assert_eq!(brute_force_pack(&g, &prof).unwrap(), OracleVerdict::Infeasible);
        // a single 6-cycle or a single 4-cycle does fit
        let six = CycleProfile::new(&[6], Mode::Conjecture).unwrap();
        assert!(brute_force_pack(&g, &six).unwrap().is_packed());
    }

    #[test]
    fn refuses_large_hosts() {
        let g = gen_complete(10).unwrap();
        let prof = CycleProfile::new(&[6], Mode::Theorem).unwrap();
        assert_eq!(
            brute_force_pack(&g, &prof),
            Err(OracleError::TooLarge { order: 20, limit: 18 })
        );
        assert!(brute_force_pack_with_limit(&g, &prof, 20).unwrap().is_packed());
    }

    #[test]
    fn complete_graph_splits_into_three() {
        let g = gen_complete(9).unwrap();
        let prof = CycleProfile::new(&[6, 6, 6], Mode::Theorem).unwrap();
        let OracleVerdict::Packed(pk) = brute_force_pack(&g, &prof).unwrap() else {
            panic!("K99 holds three 6-cycles");
        };
        assert!(verify_packing(&g, &prof, &pk).ok);
        let too_many = CycleProfile::new(&[6, 6, 8], Mode::Theorem).unwrap();
        assert_eq!(brute_force_pack(&g, &too_many).unwrap(), OracleVerdict::Infeasible);
    }

    #[test]
    fn two_core_strips_pendant_paths() {
        // 4-cycle 0-3-1-4 plus the pendant vertex 2
        let g = BipartiteGraph::from_edges(3, 2, [(0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]).unwrap();
        assert_eq!(two_core(&g, g.vertices()).iter().collect::<Vec<_>>(), vec![0, 1, 3, 4]);
    }
}
