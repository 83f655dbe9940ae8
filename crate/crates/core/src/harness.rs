//! Command implementations behind the `cyclepack` binary.
//!
//! Each command returns a serializable summary; printing and exit codes are
//! left to the caller.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::generate::{gen_random_mindeg, gen_sharpness, GenerateError};
use crate::graph::{BipartiteGraph, Vertex};
use crate::io::{parse_graph, serialize_graph, ParseError};
use crate::packer::{
    brute_force_pack_with_limit, pack, MoveKind, OracleError, OracleVerdict, Outcome, PackConfig,
    PackReport,
};
use crate::profile::{CycleProfile, Mode, ProfileError};
use crate::verifier::{check_hypotheses, verify_packing, VerificationReport};

pub const EXIT_PACKED: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Largest side accepted by [`cmd_exhaustive`] without `force`.
pub const EXHAUSTIVE_SIDE_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph, HarnessError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    parse_graph(&bytes).map_err(|source| HarnessError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_graph(path: &Path, g: &BipartiteGraph) -> Result<(), HarnessError> {
    std::fs::write(path, serialize_graph(g)).map_err(io_err(path))
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub result: &'static str,
    pub profile: CycleProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<Vec<Vertex>>>,
    /// Full verification for a packing, hypothesis checks otherwise.
    pub report: VerificationReport,
    pub search: PackReport,
}

impl SolveResult {
    pub fn exit_code(&self) -> i32 {
        match self.result {
            "packing" => EXIT_PACKED,
            "infeasible" => EXIT_INFEASIBLE,
            _ => EXIT_UNKNOWN,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solve result serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("result: {}\nprofile: {}\n", self.result, self.profile);
        if let Some(cycles) = &self.cycles {
            for (i, c) in cycles.iter().enumerate() {
                let ids: Vec<String> = c.iter().map(Vertex::to_string).collect();
                let _ = writeln!(out, "cycle {i} (length {}): {}", c.len(), ids.join(" "));
            }
        }
        for c in &self.report.checks {
            let _ = writeln!(
                out,
                "  {:<22} {:<4} {}",
                c.name,
                if c.pass { "ok" } else { "FAIL" },
                c.detail
            );
        }
        out
    }
}

pub fn solve(g: &BipartiteGraph, prof: &CycleProfile, cfg: &PackConfig) -> SolveResult {
    let (outcome, search) = pack(g, prof, cfg);
    let (cycles, report) = match &outcome {
        Outcome::Packed(pk) => (Some(pk.cycles().to_vec()), verify_packing(g, prof, pk)),
        _ => (None, check_hypotheses(g, prof)),
    };
    SolveResult {
        result: outcome.label(),
        profile: prof.clone(),
        cycles,
        report,
        search,
    }
}

pub fn cmd_solve(path: &Path, prof: &CycleProfile, cfg: &PackConfig) -> Result<SolveResult, HarnessError> {
    let g = read_graph(path)?;
    Ok(solve(&g, prof, cfg))
}

// ---------------------------------------------------------------- trials

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialConfig {
    pub profile: CycleProfile,
    pub side_size: usize,
    /// Defaults to the profile's degree threshold.
    pub delta: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub budget: usize,
    pub restarts: usize,
    pub oracle_limit: usize,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl TrialConfig {
    pub fn new(profile: CycleProfile, side_size: usize, trials: usize, seed: u64) -> Self {
        let base = PackConfig::default();
        TrialConfig {
            profile,
            side_size,
            delta: None,
            trials,
            seed,
            budget: base.budget,
            restarts: base.restarts,
            oracle_limit: base.oracle_limit,
            threads: None,
        }
    }

    pub fn effective_delta(&self) -> usize {
        self.delta.unwrap_or_else(|| self.profile.degree_threshold())
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        if self.side_size == 0 {
            return Err(HarnessError::Config("side size must be at least 1".into()));
        }
        let delta = self.effective_delta();
        if delta > self.side_size {
            return Err(HarnessError::Config(format!(
                "delta {delta} exceeds side size {}",
                self.side_size
            )));
        }
        if 2 * self.side_size > crate::graph::MAX_VERTICES {
            return Err(HarnessError::Config(format!(
                "side size {} exceeds the {}-vertex limit",
                self.side_size,
                crate::graph::MAX_VERTICES
            )));
        }
        Ok(())
    }

    fn pack_config(&self, seed: u64) -> PackConfig {
        PackConfig {
            budget: self.budget,
            restarts: self.restarts,
            oracle_limit: self.oracle_limit,
            seed,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub outcome: &'static str,
    pub hypotheses_hold: bool,
    /// The exact oracle decided this trial.
    pub oracle_fallback: bool,
    pub theorem_violation: bool,
    pub moves: BTreeMap<MoveKind, usize>,
    pub restarts_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<Vec<Vertex>>>,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub packed: usize,
    pub infeasible: usize,
    pub unknown: usize,
    pub success_rate: f64,
    pub oracle_fallbacks: usize,
    pub hypothesis_trials: usize,
    pub theorem_violations: usize,
    pub move_histogram: BTreeMap<MoveKind, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub per_trial_ms: Vec<f64>,
    pub mean_ms: f64,
    pub max_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub config: TrialConfig,
    pub trials: Vec<TrialRecord>,
    pub aggregate: Aggregate,
    pub timing: Timing,
}

impl CampaignSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// JSON without the `timing` key; equal for equal seeds and configs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("summary serializes");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![
            "index",
            "seed",
            "outcome",
            "hypotheses_hold",
            "oracle_fallback",
            "theorem_violation",
            "restarts_used",
            "time_ms",
        ];
        header.extend(MoveKind::ALL.iter().map(|k| k.name()));
        w.write_record(&header).expect("in-memory write");
        for (t, ms) in self.trials.iter().zip(&self.timing.per_trial_ms) {
            let mut row = vec![
                t.index.to_string(),
                t.seed.to_string(),
                t.outcome.to_string(),
                t.hypotheses_hold.to_string(),
                t.oracle_fallback.to_string(),
                t.theorem_violation.to_string(),
                t.restarts_used.to_string(),
                format!("{ms:.3}"),
            ];
            row.extend(
                MoveKind::ALL
                    .iter()
                    .map(|k| t.moves.get(k).copied().unwrap_or(0).to_string()),
            );
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let a = &self.aggregate;
        let c = &self.config;
        let mut out = format!(
            "profile {} ({})  side {}  delta {}  trials {}  seed {}\n",
            c.profile,
            c.profile.mode(),
            c.side_size,
            c.effective_delta(),
            c.trials,
            c.seed
        );
        let _ = writeln!(out, "{:<20}{:>10}", "packed", a.packed);
        let _ = writeln!(out, "{:<20}{:>10}", "infeasible", a.infeasible);
        let _ = writeln!(out, "{:<20}{:>10}", "unknown", a.unknown);
        let _ = writeln!(out, "{:<20}{:>10.4}", "success rate", a.success_rate);
        let _ = writeln!(out, "{:<20}{:>10}", "oracle fallbacks", a.oracle_fallbacks);
        let _ = writeln!(out, "{:<20}{:>10}", "hypothesis trials", a.hypothesis_trials);
        let _ = writeln!(out, "{:<20}{:>10}", "theorem violations", a.theorem_violations);
        for (k, n) in &a.move_histogram {
            let _ = writeln!(out, "  {:<18}{:>10}", k.name(), n);
        }
        let t = &self.timing;
        let _ = writeln!(
            out,
            "{:<20}{:>10.1} ms mean, {:.1} ms max, {:.1} ms total",
            "time", t.mean_ms, t.max_ms, t.total_ms
        );
        for tr in self.trials.iter().filter(|t| t.theorem_violation) {
            let _ = writeln!(out, "THEOREM VIOLATION: trial {} seed {}", tr.index, tr.seed);
        }
        out
    }
}

fn run_trial(cfg: &TrialConfig, index: usize) -> Result<(TrialRecord, f64), HarnessError> {
    let start = Instant::now();
    let seed = cfg.seed ^ index as u64;
    let n = cfg.side_size;
    let g = gen_random_mindeg(n, n, cfg.effective_delta(), seed)?;
    let prof = &cfg.profile;
    let hypotheses_hold = check_hypotheses(&g, prof).hypotheses_hold();
    let (mut outcome, search) = pack(&g, prof, &cfg.pack_config(seed));
    let mut oracle_fallback = search.used_oracle;

    let escalate = hypotheses_hold && 2 * n <= cfg.oracle_limit;
    if escalate && outcome.packing().is_none() && !search.used_oracle {
        oracle_fallback = true;
        outcome = match brute_force_pack_with_limit(&g, prof, cfg.oracle_limit)? {
            OracleVerdict::Packed(pk) => Outcome::Packed(pk),
            OracleVerdict::Infeasible => Outcome::Infeasible,
        };
    }
    let theorem_violation = hypotheses_hold && outcome.packing().is_none() && escalate;
    if theorem_violation {
        log::error!("THEOREM VIOLATION: trial {index}, seed {seed}");
    }
    let (cycles, report) = match &outcome {
        Outcome::Packed(pk) => (Some(pk.cycles().to_vec()), verify_packing(&g, prof, pk)),
        _ => (None, check_hypotheses(&g, prof)),
    };
    let record = TrialRecord {
        index,
        seed,
        outcome: outcome.label(),
        hypotheses_hold,
        oracle_fallback,
        theorem_violation,
        moves: search.moves,
        restarts_used: search.restarts_used,
        cycles,
        report,
    };
    Ok((record, start.elapsed().as_secs_f64() * 1e3))
}

pub fn cmd_trials(cfg: &TrialConfig) -> Result<CampaignSummary, HarnessError> {
    cfg.validate()?;
    let started = Instant::now();
    let run = || -> Result<Vec<(TrialRecord, f64)>, HarnessError> {
        (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect()
    };
    let results = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let (trials, per_trial_ms): (Vec<TrialRecord>, Vec<f64>) = results.into_iter().unzip();

    let count = |label: &str| trials.iter().filter(|t| t.outcome == label).count();
    let mut move_histogram = BTreeMap::new();
    for t in &trials {
        for (k, n) in &t.moves {
            *move_histogram.entry(*k).or_insert(0) += n;
        }
    }
    let packed = count("packing");
    let aggregate = Aggregate {
        packed,
        infeasible: count("infeasible"),
        unknown: count("unknown"),
        success_rate: packed as f64 / trials.len() as f64,
        oracle_fallbacks: trials.iter().filter(|t| t.oracle_fallback).count(),
        hypothesis_trials: trials.iter().filter(|t| t.hypotheses_hold).count(),
        theorem_violations: trials.iter().filter(|t| t.theorem_violation).count(),
        move_histogram,
    };
    let timing = Timing {
        mean_ms: per_trial_ms.iter().sum::<f64>() / per_trial_ms.len() as f64,
        max_ms: per_trial_ms.iter().copied().fold(0.0, f64::max),
        total_ms: started.elapsed().as_secs_f64() * 1e3,
        per_trial_ms,
    };
    Ok(CampaignSummary {
        config: cfg.clone(),
        trials,
        aggregate,
        timing,
    })
}

// ---------------------------------------------------------------- exhaustive

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveSummary {
    pub side: usize,
    pub profile: CycleProfile,
    pub threshold: usize,
    /// `2^(side^2)`: every edge subset, visited or pruned.
    pub graphs_enumerated: u128,
    pub pruned: u128,
    pub examined: u128,
    pub hypothesis_satisfying: u128,
    pub packed: u128,
    pub violations: Vec<Vec<(Vertex, Vertex)>>,
}

impl ExhaustiveSummary {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.packed == self.hypothesis_satisfying
    }
}

/// Every bipartite graph on `side + side` labelled vertices; each graph
/// meeting both hypotheses must be packable.
///
/// X rows are chosen one at a time as neighbor masks over Y. A branch is
/// cut as soon as a finished X row is under-degree or some Y vertex can no
/// longer reach the threshold; its subtree is counted as pruned.
pub fn cmd_exhaustive(
    side: usize,
    prof: &CycleProfile,
    force: bool,
) -> Result<ExhaustiveSummary, HarnessError> {
    if side == 0 {
        return Err(HarnessError::Config("side must be at least 1".into()));
    }
    if side > EXHAUSTIVE_SIDE_CAP && !force {
        return Err(HarnessError::Config(format!(
            "side {side} enumerates 2^{} graphs; pass --force above {EXHAUSTIVE_SIDE_CAP}",
            side * side
        )));
    }
    if side * side > 126 {
        return Err(HarnessError::Config(format!("side {side} is too large to enumerate")));
    }
    let threshold = prof.degree_threshold();
    let mut summary = ExhaustiveSummary {
        side,
        profile: prof.clone(),
        threshold,
        graphs_enumerated: 1u128 << (side * side),
        pruned: 0,
        examined: 0,
        hypothesis_satisfying: 0,
        packed: 0,
        violations: Vec::new(),
    };
    let balance_ok = 2 * side >= prof.n();
    let mut rows = vec![0u32; side];
    let mut ydeg = vec![0usize; side];
    enumerate_rows(0, side, threshold, balance_ok, prof, &mut rows, &mut ydeg, &mut summary)?;
    Ok(summary)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rows(
    row: usize,
    side: usize,
    threshold: usize,
    balance_ok: bool,
    prof: &CycleProfile,
    rows: &mut [u32],
    ydeg: &mut [usize],
    summary: &mut ExhaustiveSummary,
) -> Result<(), HarnessError> {
    if row == side {
        summary.examined += 1;
        if !balance_ok || ydeg.iter().any(|&d| d < threshold) {
            return Ok(());
        }
        summary.hypothesis_satisfying += 1;
        let rows: &[u32] = rows;
        let edges: Vec<(Vertex, Vertex)> = (0..side)
            .flat_map(|x| (0..side).filter(move |&y| rows[x] >> y & 1 == 1).map(move |y| (x, side + y)))
            .collect();
        let g = BipartiteGraph::from_edges(side, side, edges.iter().copied())
            .expect("enumerated edges are valid");
        debug_assert!(check_hypotheses(&g, prof).hypotheses_hold());
        match brute_force_pack_with_limit(&g, prof, g.order())? {
            OracleVerdict::Packed(pk) => {
                assert!(verify_packing(&g, prof, &pk).ok);
                summary.packed += 1;
            }
            OracleVerdict::Infeasible => {
                log::error!("THEOREM VIOLATION: {edges:?}");
                summary.violations.push(edges);
            }
        }
        return Ok(());
    }
    let remaining_after = side - row - 1;
    for mask in 0u32..(1 << side) {
        let cut = |ydeg: &[usize]| {
            (mask.count_ones() as usize) < threshold
                || (0..side).any(|y| ydeg[y] + (mask >> y & 1) as usize + remaining_after < threshold)
        };
        if cut(ydeg) {
            summary.pruned += 1u128 << (side * remaining_after);
            continue;
        }
        rows[row] = mask;
        for (y, d) in ydeg.iter_mut().enumerate() {
            *d += (mask >> y & 1) as usize;
        }
        enumerate_rows(row + 1, side, threshold, balance_ok, prof, rows, ydeg, summary)?;
        for (y, d) in ydeg.iter_mut().enumerate() {
            *d -= (mask >> y & 1) as usize;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- sharpness

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub k: usize,
    pub order: usize,
    pub profile: CycleProfile,
    pub min_degree: usize,
    pub threshold: usize,
    pub verdict: &'static str,
    /// Verdict for the same multiset given in another order.
    pub permuted_verdict: &'static str,
    pub certified: bool,
}

fn verdict_label(v: &OracleVerdict) -> &'static str {
    match v {
        OracleVerdict::Packed(_) => "packing",
        OracleVerdict::Infeasible => "infeasible",
    }
}

pub fn cmd_sharpness(k: usize, oracle_limit: usize) -> Result<SharpnessReport, HarnessError> {
    if k < 2 || k % 2 == 1 {
        return Err(HarnessError::Config(format!("k must be even and at least 2, got {k}")));
    }
    let (g, prof) = gen_sharpness(k)?;
    let min_degree = g.min_degree().expect("non-empty host");
    let threshold = prof.degree_threshold();
    if min_degree != k + 1 || k + 1 + 1 != threshold {
        return Err(HarnessError::Config(format!(
            "construction has minimum degree {min_degree}, threshold {threshold}"
        )));
    }
    let verdict = brute_force_pack_with_limit(&g, &prof, oracle_limit)?;
    let mut permuted: Vec<usize> = prof.lengths().to_vec();
    permuted.reverse();
    let permuted_prof = CycleProfile::new(&permuted, Mode::Conjecture)?;
    let permuted_verdict = brute_force_pack_with_limit(&g, &permuted_prof, oracle_limit)?;
    let certified = verdict == OracleVerdict::Infeasible && permuted_verdict == OracleVerdict::Infeasible;
    Ok(SharpnessReport {
        k,
        order: g.order(),
        profile: prof,
        min_degree,
        threshold,
        verdict: verdict_label(&verdict),
        permuted_verdict: verdict_label(&permuted_verdict),
        certified,
    })
}

// ---------------------------------------------------------------- hunt

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub side: usize,
    pub delta: usize,
    pub profile: CycleProfile,
    pub graph_file: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntReport {
    pub side: usize,
    pub profile: CycleProfile,
    pub delta: usize,
    pub trials: usize,
    pub seed: u64,
    pub certified: usize,
    pub packed: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Random hosts at the conjectured threshold for a profile with 4-cycles,
/// decided by the exact oracle. Refuted hosts are written to `out`.
pub fn cmd_conjecture_hunt(
    side: usize,
    prof: &CycleProfile,
    trials: usize,
    seed: u64,
    out: &Path,
    oracle_limit: usize,
) -> Result<HuntReport, HarnessError> {
    if prof.mode() != Mode::Conjecture || !prof.lengths().contains(&4) {
        return Err(HarnessError::Config(
            "hunt needs a conjecture-mode profile with at least one 4".into(),
        ));
    }
    if 2 * side > oracle_limit {
        return Err(HarnessError::Config(format!(
            "{} vertices exceed the oracle limit {oracle_limit}",
            2 * side
        )));
    }
    if trials == 0 {
        return Err(HarnessError::Config("trials must be at least 1".into()));
    }
    std::fs::create_dir_all(out).map_err(io_err(out))?;
    let delta = prof.degree_threshold();
    let verdicts: Vec<(u64, BipartiteGraph, OracleVerdict)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed ^ i as u64;
            let g = gen_random_mindeg(side, side, delta, s)?;
            let v = brute_force_pack_with_limit(&g, prof, oracle_limit)?;
            Ok((s, g, v))
        })
        .collect::<Result<_, HarnessError>>()?;

    let mut report = HuntReport {
        side,
        profile: prof.clone(),
        delta,
        trials,
        seed,
        certified: 0,
        packed: 0,
        counterexamples: Vec::new(),
    };
    for (trial, (s, g, v)) in verdicts.into_iter().enumerate() {
        if !check_hypotheses(&g, prof).hypotheses_hold() {
            continue;
        }
        report.certified += 1;
        match v {
            OracleVerdict::Packed(_) => report.packed += 1,
            OracleVerdict::Infeasible => {
                let graph_file = out.join(format!("counterexample_{trial}_{s}.graph"));
                write_graph(&graph_file, &g)?;
                let cx = Counterexample {
                    trial,
                    seed: s,
                    side,
                    delta,
                    profile: prof.clone(),
                    graph_file: graph_file.clone(),
                };
                let meta = graph_file.with_extension("json");
                let json = serde_json::to_string_pretty(&cx).expect("metadata serializes");
                std::fs::write(&meta, json).map_err(io_err(&meta))?;
                log::warn!("counterexample candidate written to {}", graph_file.display());
                report.counterexamples.push(cx);
            }
        }
    }
    Ok(report)
}
