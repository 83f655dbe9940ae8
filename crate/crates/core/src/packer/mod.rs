//! Packing engine: peel the profile one cycle at a time and drive a local
//! move loop in the remainder, with seeded restarts and an exact fallback.

mod moves;
mod oracle;
mod state;

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{BipartiteGraph, Vertex};
use crate::profile::CycleProfile;
use crate::verifier::verify_packing;

pub use moves::{
    alternating_segments, endpoint_bound_holds, move_close_cycle, move_double_exchange,
    move_exchange_one, move_extend_path, move_shrink, select_anchor, select_concentration,
    ExchangeContext, SEARCH_BUDGET,
};
pub use oracle::{
    brute_force_pack, brute_force_pack_with_limit, OracleError, OracleVerdict, DEFAULT_ORACLE_LIMIT,
};
pub use state::{FixedCycle, Potential, SearchState, StateError};

pub const ORACLE_LIMIT_ENV: &str = "CYCLEPACK_ORACLE_LIMIT";

/// Vertex-disjoint cycles, listed in the order of the (descending) profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    cycles: Vec<Vec<Vertex>>,
}

impl Packing {
    pub fn new(cycles: Vec<Vec<Vertex>>) -> Self {
        Packing { cycles }
    }

    pub fn cycles(&self) -> &[Vec<Vertex>] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<Vec<Vertex>> {
        self.cycles
    }
}

/// Oracle limit from `CYCLEPACK_ORACLE_LIMIT`, or the built-in default.
pub fn default_oracle_limit() -> usize {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackConfig {
    /// Moves allowed per level and attempt.
    pub budget: usize,
    pub restarts: usize,
    pub oracle_limit: usize,
    pub seed: u64,
    pub record_trace: bool,
}

impl Default for PackConfig {
    fn default() -> Self {
        PackConfig {
            budget: 10_000,
            restarts: 8,
            oracle_limit: default_oracle_limit(),
            seed: 0,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Packed(Packing),
    /// Refuted by counting or by the exact oracle.
    Infeasible,
    /// Budget and restarts spent on a host too large for the oracle.
    Unknown,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Packed(_) => "packing",
            Outcome::Infeasible => "infeasible",
            Outcome::Unknown => "unknown",
        }
    }

    pub fn packing(&self) -> Option<&Packing> {
        match self {
            Outcome::Packed(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Shrink,
    ExtendPath,
    ExchangeOne,
    CloseCycle,
    DoubleExchange,
    Restart,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [
        MoveKind::Shrink,
        MoveKind::ExtendPath,
        MoveKind::ExchangeOne,
        MoveKind::CloseCycle,
        MoveKind::DoubleExchange,
        MoveKind::Restart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Shrink => "shrink",
            MoveKind::ExtendPath => "extend_path",
            MoveKind::ExchangeOne => "exchange_one",
            MoveKind::CloseCycle => "close_cycle",
            MoveKind::DoubleExchange => "double_exchange",
            MoveKind::Restart => "restart",
        }
    }
}

/// A state-changing move and the potentials around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub attempt: usize,
    /// Number of fixed cycles while the move ran.
    pub level: usize,
    pub kind: MoveKind,
    pub before: Potential,
    pub after: Potential,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackReport {
    pub moves: BTreeMap<MoveKind, usize>,
    pub restarts_used: usize,
    pub used_oracle: bool,
    pub claim4_violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<TraceEvent>,
}

impl PackReport {
    fn count(&mut self, kind: MoveKind) {
        *self.moves.entry(kind).or_default() += 1;
    }

    pub fn total_moves(&self) -> usize {
        self.moves.values().sum()
    }
}

/// Packs `prof` into `g`.
///
/// Every returned packing has been checked by the verifier. `Infeasible`
/// comes only from counting (`n > |V(G)|`) or from the exact oracle.
pub fn pack(g: &BipartiteGraph, prof: &CycleProfile, cfg: &PackConfig) -> (Outcome, PackReport) {
    let mut report = PackReport::default();
    if prof.n() > g.order() {
        return (Outcome::Infeasible, report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 0..=cfg.restarts {
        let perm: Vec<Vertex> = if attempt == 0 {
            (0..g.order()).collect()
        } else {
            report.count(MoveKind::Restart);
            report.restarts_used += 1;
            random_side_permutation(g, &mut rng)
        };
        let h = g.relabel(&perm);
        let mut run = Run {
            g: &h,
            cfg,
            attempt,
            report: &mut report,
        };
        if let Some(cycles) = run.peel(prof.lengths()) {
            let mut inverse = vec![0; perm.len()];
            for (v, &p) in perm.iter().enumerate() {
                inverse[p] = v;
            }
            let cycles = cycles
                .into_iter()
                .map(|c| c.into_iter().map(|v| inverse[v]).collect())
                .collect();
            return (Outcome::Packed(certified(g, prof, Packing::new(cycles))), report);
        }
        log::debug!("attempt {attempt} stalled");
    }
    if g.order() <= cfg.oracle_limit {
        report.used_oracle = true;
        let verdict = brute_force_pack_with_limit(g, prof, cfg.oracle_limit)
            .expect("order checked against the limit");
        let outcome = match verdict {
            OracleVerdict::Packed(pk) => Outcome::Packed(certified(g, prof, pk)),
            OracleVerdict::Infeasible => Outcome::Infeasible,
        };
        return (outcome, report);
    }
    (Outcome::Unknown, report)
}

fn certified(g: &BipartiteGraph, prof: &CycleProfile, pk: Packing) -> Packing {
    let report = verify_packing(g, prof, &pk);
    assert!(report.ok, "packer produced an invalid packing: {:?}", report.first_failure());
    assert!(pk.cycles().iter().all(|c| c.len() % 2 == 0));
    pk
}

fn random_side_permutation(g: &BipartiteGraph, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let mut xs: Vec<Vertex> = g.x_side().iter().collect();
    let mut ys: Vec<Vertex> = g.y_side().iter().collect();
    xs.shuffle(rng);
    ys.shuffle(rng);
    xs.into_iter().chain(ys).collect()
}

struct Run<'a> {
    g: &'a BipartiteGraph,
    cfg: &'a PackConfig,
    attempt: usize,
    report: &'a mut PackReport,
}

impl Run<'_> {
    fn apply(&mut self, st: &SearchState, next: SearchState, kind: MoveKind) -> SearchState {
        let (before, after) = (st.potential(), next.potential());
        assert!(after > before, "{kind:?} did not improve the potential");
        debug_assert!(next.is_consistent(self.g));
        self.report.count(kind);
        if self.cfg.record_trace {
            self.report.trace.push(TraceEvent {
                attempt: self.attempt,
                level: st.fixed().len(),
                kind,
                before,
                after,
            });
        }
        next
    }

    /// Solves `lengths[..k-1]` first, then builds the last cycle in what
    /// remains.
    fn peel(&mut self, lengths: &[usize]) -> Option<Vec<Vec<Vertex>>> {
        let (&last, prefix) = lengths.split_last()?;
        let fixed = if prefix.is_empty() {
            Vec::new()
        } else {
            self.peel(prefix)?
        };
        let g = self.g;
        let mut st = SearchState::seeded(g, fixed, prefix, last);

        for _ in 0..self.cfg.budget {
            if let Some(next) = move_shrink(&st, g) {
                st = self.apply(&st, next, MoveKind::Shrink);
                continue;
            }
            if let Some(next) = move_extend_path(&st, g) {
                st = self.apply(&st, next, MoveKind::ExtendPath);
                continue;
            }
            if let Some(next) = move_exchange_one(&st, g) {
                st = self.apply(&st, next, MoveKind::ExchangeOne);
                continue;
            }
            if let Some(cycle) = move_close_cycle(&st, g) {
                self.report.count(MoveKind::CloseCycle);
                let mut cycles = st.cycles();
                cycles.push(cycle);
                return Some(cycles);
            }
            return self.exchange_at_stall(&st);
        }
        None
    }

    fn exchange_at_stall(&mut self, st: &SearchState) -> Option<Vec<Vec<Vertex>>> {
        let g = self.g;
        let anchor = select_anchor(st, g)?;
        if st.is_hamiltonian_path() && !endpoint_bound_holds(st, g, &anchor) {
            self.report.claim4_violations += 1;
            log::warn!(
                "endpoint degree bound fails at a stalled state (attempt {}, level {})",
                self.attempt,
                st.fixed().len()
            );
        }
        let contexts = match select_concentration(st, g) {
            Some(ctx) => vec![ctx, anchor],
            None => {
                let mut all = vec![anchor.clone()];
                all.extend((0..st.fixed().len()).filter(|&q| q != anchor.p_index).map(|q| {
                    ExchangeContext {
                        q_index: Some(q),
                        ..anchor.clone()
                    }
                }));
                all
            }
        };
        for ctx in contexts {
            if let Some(pk) = move_double_exchange(st, g, &ctx) {
                self.report.count(MoveKind::DoubleExchange);
                return Some(pk.into_cycles());
            }
        }
        None
    }
}
