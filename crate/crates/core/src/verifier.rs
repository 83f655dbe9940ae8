//! Independent validation of packings and of the degree hypotheses.
//!
//! Nothing here trusts packer state: every check works from the host graph,
//! the profile and the raw cycle sequences.

use serde::{Deserialize, Serialize};

use crate::graph::{BipartiteGraph, Vertex, VertexSet};
use crate::packer::Packing;
use crate::profile::CycleProfile;

pub const CHECK_BIPARTITE: &str = "bipartite";
pub const CHECK_BALANCE: &str = "hypothesis_balance";
pub const CHECK_MIN_DEGREE: &str = "hypothesis_min_degree";
pub const CHECK_CYCLE_COUNT: &str = "cycle_count";
pub const CHECK_SIMPLE: &str = "simple";
pub const CHECK_ADJACENT: &str = "adjacent";
pub const CHECK_LENGTH: &str = "length";
pub const CHECK_EVEN: &str = "even";
pub const CHECK_DISJOINT: &str = "disjoint";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn is_hypothesis(&self) -> bool {
        self.name.starts_with("hypothesis_")
    }
}

/// `ok` is true iff every non-hypothesis check passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let ok = checks.iter().filter(|c| !c.is_hypothesis()).all(|c| c.pass);
        VerificationReport { ok, checks }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.is_hypothesis()).all(|c| c.pass)
    }

    /// First failing structural check, if any.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.is_hypothesis() && !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn check(name: &str, failure: Option<String>) -> Check {
    Check {
        name: name.to_string(),
        pass: failure.is_none(),
        detail: failure.unwrap_or_else(|| "ok".to_string()),
    }
}

fn bipartite_check(g: &BipartiteGraph) -> Check {
    let failure = g.vertices().iter().find_map(|v| {
        let same = g.side_set(g.side(v));
        g.neighbors(v)
            .intersection(same)
            .first()
            .map(|w| format!("edge {v}-{w} inside one side"))
            .or_else(|| {
                g.neighbors(v)
                    .iter()
                    .find(|&w| !g.neighbors(w).contains(v))
                    .map(|w| format!("edge {v}-{w} not symmetric"))
            })
    });
    check(CHECK_BIPARTITE, failure)
}

fn hypothesis_checks(g: &BipartiteGraph, prof: &CycleProfile) -> [Check; 2] {
    let half = prof.n() / 2;
    let balance = if g.x_size() != g.y_size() {
        Some(format!("|X| = {} differs from |Y| = {}", g.x_size(), g.y_size()))
    } else if g.x_size() < half {
        Some(format!("|X| = |Y| = {} below n/2 = {half}", g.x_size()))
    } else {
        None
    };
    let threshold = prof.degree_threshold();
    let degree = match g.vertices().iter().find(|&v| g.neighbors(v).len() < threshold) {
        Some(v) => Some(format!(
            "vertex {v} has degree {} below n/2 - k + 1 = {threshold}",
            g.neighbors(v).len()
        )),
        None if g.order() == 0 => Some("graph has no vertices".to_string()),
        None => None,
    };
    [check(CHECK_BALANCE, balance), check(CHECK_MIN_DEGREE, degree)]
}

/// Whether the instance meets the sufficient conditions for a packing.
pub fn check_hypotheses(g: &BipartiteGraph, prof: &CycleProfile) -> VerificationReport {
    let mut checks = vec![bipartite_check(g)];
    checks.extend(hypothesis_checks(g, prof));
    VerificationReport::from_checks(checks)
}

/// Full structural check of `pk` against `prof`; cycle `i` is matched to the
/// `i`-th profile entry (profiles are sorted descending).
pub fn verify_packing(g: &BipartiteGraph, prof: &CycleProfile, pk: &Packing) -> VerificationReport {
    let mut checks = vec![bipartite_check(g)];
    checks.extend(hypothesis_checks(g, prof));

    let cycles = pk.cycles();
    checks.push(check(
        CHECK_CYCLE_COUNT,
        (cycles.len() != prof.k())
            .then(|| format!("{} cycles for a profile of {}", cycles.len(), prof.k())),
    ));

    let simple = cycles.iter().enumerate().find_map(|(i, c)| {
        if let Some(&v) = c.iter().find(|&&v| v >= g.order()) {
            return Some(format!("cycle {i}: vertex {v} not in graph"));
        }
        if c.len() < 4 {
            return Some(format!("cycle {i}: only {} vertices", c.len()));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in c {
            if seen.contains(v) {
                return Some(format!("cycle {i}: vertex {v} repeated"));
            }
            seen.insert(v);
        }
        None
    });
    checks.push(check(CHECK_SIMPLE, simple));

    let adjacent = cycles.iter().enumerate().find_map(|(i, c)| {
        (0..c.len()).find_map(|j| {
            let (a, b) = (c[j], c[(j + 1) % c.len()]);
            (!g.has_edge(a, b)).then(|| format!("cycle {i}: {a}-{b} is not an edge"))
        })
    });
    checks.push(check(CHECK_ADJACENT, adjacent));

    let length = cycles
        .iter()
        .zip(prof.lengths())
        .enumerate()
        .find_map(|(i, (c, &want))| {
            (c.len() < want).then(|| format!("cycle {i}: length {} below {want}", c.len()))
        });
    checks.push(check(CHECK_LENGTH, length));

    let even = cycles
        .iter()
        .enumerate()
        .find_map(|(i, c)| (c.len() % 2 == 1).then(|| format!("cycle {i}: odd length {}", c.len())));
    checks.push(check(CHECK_EVEN, even));

    let mut owner: Vec<Option<usize>> = vec![None; g.order()];
    let disjoint = cycles.iter().enumerate().find_map(|(i, c)| {
        c.iter().filter(|&&v| v < g.order()).find_map(|&v: &Vertex| match owner[v] {
            Some(j) if j != i => Some(format!("vertex {v} on cycles {j} and {i}")),
            _ => {
                owner[v] = Some(i);
                None
            }
        })
    });
    checks.push(check(CHECK_DISJOINT, disjoint));

    VerificationReport::from_checks(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_complete, gen_sharpness};
    use crate::profile::Mode;

    fn p(l: &[usize]) -> CycleProfile {
        CycleProfile::new(l, Mode::Theorem).unwrap()
    }

    #[test]
    fn accepts_hamilton_cycle_of_k33() {
        let g = gen_complete(3).unwrap();
        let r = verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 3, 1, 4, 2, 5]]));
        assert!(r.ok, "{r:?}");
        assert!(r.hypotheses_hold());
    }

    #[test]
    fn duplicate_cycle_fails_disjointness() {
        let g = gen_complete(3).unwrap();
        let c = vec![0, 3, 1, 4, 2, 5];
        let r = verify_packing(&g, &p(&[6, 6]), &Packing::new(vec![c.clone(), c]));
        assert!(!r.ok);
        let d = r.check(CHECK_DISJOINT).unwrap();
        assert!(!d.pass);
        assert_eq!(d.detail, "vertex 0 on cycles 0 and 1");
    }

    #[test]
    fn five_cycle_claim_fails() {
        let g = gen_complete(3).unwrap();
        let prof = CycleProfile::new(&[4], Mode::Conjecture).unwrap();
        let r = verify_packing(&g, &prof, &Packing::new(vec![vec![0, 3, 1, 4, 2]]));
        assert!(!r.ok);
        assert!(!r.check(CHECK_ADJACENT).unwrap().pass);
        assert!(!r.check(CHECK_EVEN).unwrap().pass);
        assert_eq!(r.first_failure().unwrap().name, CHECK_ADJACENT);
    }

    #[test]
    fn short_and_foreign_cycles() {
        let g = gen_complete(4).unwrap();
        let r = verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 4, 1, 5]]));
        assert!(!r.check(CHECK_LENGTH).unwrap().pass);
        let r = verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 4, 1, 5, 2, 99]]));
        assert!(!r.check(CHECK_SIMPLE).unwrap().pass);
        let r = verify_packing(&g, &p(&[6, 6]), &Packing::new(vec![vec![0, 4, 1, 5, 2, 6]]));
        assert!(!r.check(CHECK_CYCLE_COUNT).unwrap().pass);
    }

    #[test]
    fn hypotheses_examples() {
        let r = check_hypotheses(&gen_complete(6).unwrap(), &p(&[6, 6]));
        assert!(r.ok && r.hypotheses_hold());

        let (g, prof) = gen_sharpness(2).unwrap();
        let r = check_hypotheses(&g, &prof);
        assert!(r.check(CHECK_BALANCE).unwrap().pass);
        let d = r.check(CHECK_MIN_DEGREE).unwrap();
        assert!(!d.pass);
        assert!(d.detail.contains("degree 3 below n/2 - k + 1 = 4"), "{}", d.detail);
        // informational only
        assert!(r.ok);

        let lopsided = crate::graph::BipartiteGraph::from_edges(3, 4, [(0, 3)]).unwrap();
        assert!(!check_hypotheses(&lopsided, &p(&[6])).check(CHECK_BALANCE).unwrap().pass);
    }

    #[test]
    fn hypothesis_failure_keeps_valid_packing_ok() {
        // K_{3,3} with |X| = 3 < n/2 = 6 still certifies one 6-cycle if asked for [6]
        let g = gen_complete(3).unwrap();
        let r = verify_packing(&g, &p(&[6, 6]), &Packing::new(vec![vec![0, 3, 1, 4, 2, 5]]));
        assert!(!r.check(CHECK_BALANCE).unwrap().pass);
        let r2 = verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 3, 1, 4, 2, 5]]));
        assert!(r2.ok);
    }

    #[test]
    fn json_shape() {
        let g = gen_complete(3).unwrap();
        let r = verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 3, 1, 4, 2, 5]]));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["ok"], true);
        let first = &v["checks"][0];
        let mut keys: Vec<_> = first.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, vec!["detail", "name", "pass"]);
        assert_eq!(verify_packing(&g, &p(&[6]), &Packing::new(vec![vec![0, 3, 1, 4, 2, 5]])), r);
    }
}
