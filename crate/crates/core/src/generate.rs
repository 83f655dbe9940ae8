//! Instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Vertex};
use crate::profile::{CycleProfile, Mode};

/// Fill probability used by [`gen_random_mindeg`].
pub const DEFAULT_FILL_PROBABILITY: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("minimum degree {delta} infeasible for sides {x_size} and {y_size}")]
    InfeasibleDegree {
        x_size: usize,
        y_size: usize,
        delta: usize,
    },
    #[error("fill probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("sharpness construction needs an even k >= 2, got {0}")]
    OddOrZeroK(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `K_{m,m}`.
pub fn gen_complete(m: usize) -> Result<BipartiteGraph, GenerateError> {
    if m == 0 {
        return Err(GenerateError::ZeroSize);
    }
    let mut g = BipartiteGraph::empty(m, m)?;
    for x in 0..m {
        for y in m..2 * m {
            g.set_edge(x, y);
        }
    }
    Ok(g)
}

/// Random bipartite graph with minimum degree at least `delta`, fully
/// determined by `seed`.
pub fn gen_random_mindeg(
    x_size: usize,
    y_size: usize,
    delta: usize,
    seed: u64,
) -> Result<BipartiteGraph, GenerateError> {
    gen_random_mindeg_with(x_size, y_size, delta, DEFAULT_FILL_PROBABILITY, seed)
}

/// As [`gen_random_mindeg`] with an explicit fill probability.
///
/// The base is `delta` edge-disjoint perfect matchings between the two
/// sides (cyclic shifts under random relabelings, smaller side padded with
/// virtual vertices that are then dropped). Every remaining pair becomes an
/// edge with probability `fill`. With equal sides the base alone is
/// `delta`-regular; with unequal sides any vertex left under the floor is
/// joined to random non-neighbors until it reaches `delta`.
pub fn gen_random_mindeg_with(
    x_size: usize,
    y_size: usize,
    delta: usize,
    fill: f64,
    seed: u64,
) -> Result<BipartiteGraph, GenerateError> {
    if delta > x_size.min(y_size) {
        return Err(GenerateError::InfeasibleDegree {
            x_size,
            y_size,
            delta,
        });
    }
    if !(0.0..=1.0).contains(&fill) {
        return Err(GenerateError::BadProbability(fill));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = x_size.max(y_size);

    let mut g = BipartiteGraph::empty(x_size, y_size)?;
    let mut xs: Vec<Vertex> = (0..m).collect();
    let mut ys: Vec<Vertex> = (0..m).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    for shift in 0..delta {
        for i in 0..m {
            let x = xs[i];
            let y = ys[(i + shift) % m];
            if x < x_size && y < y_size {
                g.set_edge(x, x_size + y);
            }
        }
    }
    for x in 0..x_size {
        for y in x_size..x_size + y_size {
            // draw for every pair so the stream layout is size-determined
            let add = rng.gen_bool(fill);
            if add && !g.has_edge(x, y) {
                g.set_edge(x, y);
            }
        }
    }
    // Only reachable with unequal sides: top up vertices that lost base
    // edges to padding.
    for v in 0..g.order() {
        let others = g.side_set(g.side(v).other());
        while g.neighbors(v).len() < delta {
            let free: Vec<Vertex> = others.difference(g.neighbors(v)).iter().collect();
            let w = free[rng.gen_range(0..free.len())];
            g.set_edge(v, w);
        }
    }
    debug_assert!(g.order() == 0 || g.min_degree()? >= delta);
    Ok(g)
}

/// Ids of the construction's parts for a given `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessLayout {
    pub x1: Vec<Vertex>,
    pub x2: Vec<Vertex>,
    pub u: Vertex,
    pub y1: Vec<Vertex>,
    pub y2: Vec<Vertex>,
    pub v: Vertex,
}

impl SharpnessLayout {
    pub fn new(k: usize) -> Self {
        let ys = 2 * k + 1;
        SharpnessLayout {
            x1: (0..k).collect(),
            x2: (k..2 * k).collect(),
            u: 2 * k,
            y1: (ys..ys + k).collect(),
            y2: (ys + k..ys + 2 * k).collect(),
            v: ys + 2 * k,
        }
    }
}

/// The `4k + 2`-vertex graph with minimum degree `k + 1` that has no
/// disjoint packing of `k - 1` four-cycles and one six-cycle, paired with
/// that profile (conjecture mode).
///
/// `X1–Y1` and `X2–Y2` are complete, `u` sees `Y1 ∪ {v}`, `v` sees
/// `X2 ∪ {u}`, and the i-th vertex of `X1` is matched to the i-th of `Y2`.
pub fn gen_sharpness(k: usize) -> Result<(BipartiteGraph, CycleProfile), GenerateError> {
    if k == 0 || k % 2 == 1 {
        return Err(GenerateError::OddOrZeroK(k));
    }
    let l = SharpnessLayout::new(k);
    let mut g = BipartiteGraph::empty(2 * k + 1, 2 * k + 1)?;
    for &x in &l.x1 {
        for &y in &l.y1 {
            g.set_edge(x, y);
        }
    }
    for &x in &l.x2 {
        for &y in &l.y2 {
            g.set_edge(x, y);
        }
    }
    for &y in &l.y1 {
        g.set_edge(l.u, y);
    }
    g.set_edge(l.u, l.v);
    for &x in &l.x2 {
        g.set_edge(x, l.v);
    }
    for (&x, &y) in l.x1.iter().zip(&l.y2) {
        g.set_edge(x, y);
    }
    let mut lengths = vec![4; k - 1];
    lengths.push(6);
    let profile =
        CycleProfile::new(&lengths, Mode::Conjecture).expect("sharpness profile is valid");
    Ok((g, profile))
}
