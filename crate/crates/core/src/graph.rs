//! Bipartite host graphs with dense bitmask neighborhoods.
//!
//! Vertex ids are dense: the X side is `0..x_size`, the Y side is
//! `x_size..x_size + y_size`. Every neighborhood is a [`VertexSet`], so
//! `degree_in` is a single AND plus popcount.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`BipartiteGraph`] can hold.
pub const MAX_VERTICES: usize = 128;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {order} vertices)")]
    InvalidVertex { vertex: Vertex, order: usize },
    #[error("graph with {0} vertices exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge(usize),
    #[error("edge {0}-{1} does not cross the bipartition")]
    IntraSide(Vertex, Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph has no vertices")]
    Empty,
}

/// A set of vertex ids, stored as a 128-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn range(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u128 << v)
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | 1u128 << v)
    }

    #[inline]
    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1u128 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<Vertex> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Vertex)
        }
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexSetIter(u128);

impl Iterator for VertexSetIter {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as Vertex;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Simple bipartite graph with a fixed bipartition. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    x_size: usize,
    y_size: usize,
    adjacency: Vec<VertexSet>,
}

impl BipartiteGraph {
    /// Graph with no edges.
    pub fn empty(x_size: usize, y_size: usize) -> Result<Self, GraphError> {
        let order = x_size + y_size;
        if order > MAX_VERTICES {
            return Err(GraphError::TooLarge(order));
        }
        Ok(BipartiteGraph {
            x_size,
            y_size,
            adjacency: vec![VertexSet::EMPTY; order],
        })
    }

    /// Builds a graph from `(x, y)` pairs; order within a pair is free.
    pub fn from_edges<I>(x_size: usize, y_size: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::empty(x_size, y_size)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if self.side(a) == self.side(b) {
            return Err(GraphError::IntraSide(a, b));
        }
        if self.adjacency[a].contains(b) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
        Ok(())
    }

    /// Adds the edge unless it is already present.
    pub(crate) fn set_edge(&mut self, a: Vertex, b: Vertex) {
        debug_assert_ne!(self.side(a), self.side(b));
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    #[inline]
    pub fn x_size(&self) -> usize {
        self.x_size
    }

    #[inline]
    pub fn y_size(&self) -> usize {
        self.y_size
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.x_side().iter().map(|v| self.adjacency[v].len()).sum()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.order())
    }

    #[inline]
    pub fn x_side(&self) -> VertexSet {
        VertexSet::range(self.x_size)
    }

    #[inline]
    pub fn y_side(&self) -> VertexSet {
        self.vertices().difference(self.x_side())
    }

    #[inline]
    pub fn side(&self, v: Vertex) -> Side {
        if v < self.x_size {
            Side::X
        } else {
            Side::Y
        }
    }

    pub fn side_set(&self, side: Side) -> VertexSet {
        match side {
            Side::X => self.x_side(),
            Side::Y => self.y_side(),
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Neighborhood of `v`. Panics on an out-of-range id.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.order() && self.adjacency[a].contains(b)
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    /// `|N(v) ∩ s|`.
    pub fn degree_in(&self, v: Vertex, s: VertexSet) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].intersection(s).len())
    }

    /// Unchecked `degree_in` for hot loops.
    #[inline]
    pub(crate) fn deg_in(&self, v: Vertex, s: VertexSet) -> usize {
        self.adjacency[v].intersection(s).len()
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.adjacency
            .iter()
            .map(|n| n.len())
            .min()
            .ok_or(GraphError::Empty)
    }

    /// Edges as `(x, y)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.x_side()
            .iter()
            .flat_map(move |x| self.adjacency[x].iter().map(move |y| (x, y)))
    }

    /// The subgraph induced by `s`.
    pub fn induced(&self, s: VertexSet) -> Result<InducedView<'_>, GraphError> {
        if let Some(bad) = s.difference(self.vertices()).first() {
            return Err(GraphError::InvalidVertex {
                vertex: bad,
                order: self.order(),
            });
        }
        Ok(InducedView {
            graph: self,
            vertices: s,
        })
    }

    /// Applies a vertex relabeling that maps each side onto itself.
    pub(crate) fn relabel(&self, perm: &[Vertex]) -> BipartiteGraph {
        let mut adjacency = vec![VertexSet::EMPTY; self.order()];
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            adjacency[perm[v]] = nbrs.iter().map(|w| perm[w]).collect();
        }
        BipartiteGraph {
            x_size: self.x_size,
            y_size: self.y_size,
            adjacency,
        }
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("x_size", &self.x_size)
            .field("y_size", &self.y_size)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Read-only view of `G[S]`. Side labels are those of the host.
#[derive(Clone, Copy, Debug)]
pub struct InducedView<'g> {
    graph: &'g BipartiteGraph,
    vertices: VertexSet,
}

impl<'g> InducedView<'g> {
    pub fn whole(graph: &'g BipartiteGraph) -> Self {
        InducedView {
            graph,
            vertices: graph.vertices(),
        }
    }

    #[inline]
    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.graph.neighbors(v).intersection(self.vertices)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    #[inline]
    pub fn side(&self, v: Vertex) -> Side {
        self.graph.side(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices
            .intersection(self.graph.x_side())
            .iter()
            .flat_map(move |x| self.neighbors(x).iter().map(move |y| (x, y)))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .intersection(self.graph.x_side())
            .iter()
            .map(|x| self.degree(x))
            .sum()
    }
}
